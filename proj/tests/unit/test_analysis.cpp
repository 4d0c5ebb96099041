#include "doctest.h"

#include "common/fixtures.hpp"
#include "qcsp/analysis.hpp"
#include "qcsp/feasibility.hpp"
#include "qcsp/init.hpp"
#include "qcsp/search.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace qcsp;
using qcsp::testing::random_eligible_assignment;
using qcsp::testing::random_instance;
using qcsp::testing::table1;

namespace {

// Odometer over the eligible sets, independent of the library's
// enumeration, collecting the best makespan by exhaustive decoding.
Time exhaustive_best(const Instance& inst) {
    const auto eligible = eligible_sets(inst);
    std::vector<size_t> idx(inst.n, 0);
    Assignment a;
    a.crane.resize(inst.n);
    Time best = -1;
    for (bool more = true; more;) {
        for (int t = 1; t <= inst.n; ++t) a.crane[t - 1] = eligible[t - 1][idx[t - 1]];
        try {
            const Time mk = decode_best(inst, a).makespan;
            if (best < 0 || mk < best) best = mk;
        } catch (const decode_error&) {
        }
        more = false;
        for (int pos = inst.n; pos-- > 0;) {
            if (++idx[pos] < eligible[pos].size()) {
                more = true;
                break;
            }
            idx[pos] = 0;
        }
    }
    return best;
}

// Best over all eligible assignments of the busiest crane's
// ready + workload + largest one-way travel, enumerated outright.
Time exhaustive_load_bound(const Instance& inst) {
    const auto eligible = eligible_sets(inst);
    std::vector<size_t> idx(inst.n, 0);
    Time best = -1;
    for (bool more = true; more;) {
        std::vector<Time> load(inst.m, 0), travel(inst.m, 0);
        for (int t = 1; t <= inst.n; ++t) {
            const int k = eligible[t - 1][idx[t - 1]];
            load[k - 1] += inst.p[t - 1];
            travel[k - 1] = std::max(travel[k - 1], travel_time_from_start(inst, k, t));
        }
        Time value = 0;
        for (int k = 1; k <= inst.m; ++k)
            if (load[k - 1] > 0)
                value = std::max(value, inst.crane_ready[k - 1] + load[k - 1] + travel[k - 1]);
        if (best < 0 || value < best) best = value;
        more = false;
        for (int pos = inst.n; pos-- > 0;) {
            if (++idx[pos] < eligible[pos].size()) {
                more = true;
                break;
            }
            idx[pos] = 0;
        }
    }
    return best;
}

} // namespace

TEST_CASE("exhaustive search on the worked example") {
    const Instance inst = table1();
    const Schedule best = brute_force_best(inst);
    CHECK(best.makespan == 413);
    CHECK(check(inst, best).feasible());
    // The pinned tasks stay pinned.
    CHECK(best.assignment.crane[0] == 1);
    CHECK(best.assignment.crane[1] == 1);
    CHECK(best.assignment.crane[2] == 1);
    CHECK(best.assignment.crane[6] == 2);
    CHECK(best.assignment.crane[7] == 2);
    CHECK(best.makespan == exhaustive_best(inst));
}

TEST_CASE("exhaustive search equals a hand enumeration on a twoway instance") {
    Instance raw;
    raw.n = 2;
    raw.m = 2;
    raw.l = 6;
    raw.delta = 1;
    raw.t0 = 1;
    raw.p = {7, 9};
    raw.bay = {3, 4};
    raw.crane_pos0 = {2, 5};
    raw.crane_ready = {0, 1};
    const Instance inst = make_instance(std::move(raw));

    Time best_by_hand = -1;
    for (int q1 = 1; q1 <= 2; ++q1)
        for (int q2 = 1; q2 <= 2; ++q2) {
            const Time mk = decode_best(inst, Assignment{{q1, q2}}).makespan;
            if (best_by_hand < 0 || mk < best_by_hand) best_by_hand = mk;
        }
    CHECK(brute_force_best(inst).makespan == best_by_hand);
}

TEST_CASE("a single crane admits exactly one assignment") {
    Instance raw;
    raw.n = 3;
    raw.m = 1;
    raw.l = 5;
    raw.p = {4, 8, 2};
    raw.bay = {1, 3, 5};
    raw.crane_pos0 = {3};
    raw.crane_ready = {2};
    const Instance inst = make_instance(std::move(raw));
    const Schedule best = brute_force_best(inst);
    CHECK(best.assignment.crane == std::vector<int>{1, 1, 1});
    CHECK(best.makespan == decode_best(inst, best.assignment).makespan);
}

TEST_CASE("ties go to the lexicographically smallest assignment") {
    // One task equidistant from both cranes: both assignments decode to
    // the same makespan, and the enumeration keeps crane 1.
    Instance raw;
    raw.n = 1;
    raw.m = 2;
    raw.l = 3;
    raw.delta = 0;
    raw.p = {5};
    raw.bay = {2};
    raw.crane_pos0 = {1, 3};
    raw.crane_ready = {0, 0};
    const Instance inst = make_instance(std::move(raw));
    CHECK(decode_best(inst, Assignment{{1}}).makespan ==
          decode_best(inst, Assignment{{2}}).makespan);
    CHECK(brute_force_best(inst).assignment.crane == std::vector<int>{1});
}

TEST_CASE("the enumeration refuses oversized spaces") {
    const Instance inst = table1(); // 2^3 = 8 eligible assignments
    CHECK_THROWS_AS(brute_force_best(inst, 7), input_error);
    CHECK(brute_force_best(inst, 8).makespan == 413);
}

TEST_CASE("the enumeration reports when nothing decodes") {
    Instance raw;
    raw.n = 4;
    raw.m = 1;
    raw.l = 4;
    raw.t0 = 1;
    raw.p = {5, 5, 5, 5};
    raw.bay = {1, 2, 3, 4};
    raw.crane_pos0 = {1};
    raw.crane_ready = {0};
    raw.phi = {{2, 1}, {3, 4}}; // opposed pairs block both sweep directions
    const Instance inst = make_instance(std::move(raw));
    CHECK_THROWS_AS(brute_force_best(inst), decode_error);
}

TEST_CASE("the search never beats the exhaustive optimum") {
    std::mt19937_64 rng(1861);
    for (int round = 0; round < 8; ++round) {
        const Instance inst = random_instance(rng, 4, 9, 2, 50);
        const Time optimum = brute_force_best(inst).makespan;
        SearchParams params;
        params.seed = rng();
        params.max_iters = 60;
        const SolveResult res = mgeo_solve(inst, params);
        CHECK(res.best >= optimum);
    }
}

TEST_CASE("lower bound of a single crane is ready plus work plus reach") {
    Instance raw = table1();
    raw.m = 1;
    raw.crane_pos0 = {4};
    raw.crane_ready = {7};
    const Instance inst = make_instance(std::move(raw));
    // 7 ready + 793 total processing + 4 bays to the far end.
    CHECK(lower_bound(inst) == 804);
}

TEST_CASE("lower bound of the worked example") {
    const Instance inst = table1();
    const Time lb = lower_bound(inst);
    CHECK(lb == 408);
    CHECK(lb == exhaustive_load_bound(inst));
    CHECK(lb <= decode_best(inst, s_load(inst)).makespan);
    CHECK(lb <= brute_force_best(inst).makespan);
}

TEST_CASE("lower bound matches its own exhaustive restatement") {
    std::mt19937_64 rng(271828);
    for (int round = 0; round < 20; ++round) {
        const Instance inst = random_instance(rng, 2, 9, 3, 70);
        CHECK(lower_bound(inst) == exhaustive_load_bound(inst));
    }
}

TEST_CASE("lower bound never exceeds a feasible makespan") {
    std::mt19937_64 rng(16180);
    for (int round = 0; round < 40; ++round) {
        const Instance inst = random_instance(rng, 2, 11, 3, 90);
        const Time lb = lower_bound(inst);
        CHECK(lb <= decode_best(inst, s_load(inst)).makespan);
        CHECK(lb <= decode_best(inst, s_tasks(inst)).makespan);
        CHECK(lb <= decode_best(inst, random_eligible_assignment(inst, rng)).makespan);
    }
}

TEST_CASE("an exhausted node budget falls back to a weaker valid bound") {
    const Instance inst = table1();
    const Time fallback = lower_bound(inst, 1);
    // Average-load ceiling: 793 work over 2 cranes.
    CHECK(fallback == 397);
    CHECK(fallback <= lower_bound(inst));

    std::mt19937_64 rng(333);
    for (int round = 0; round < 15; ++round) {
        const Instance random = random_instance(rng, 3, 10, 3, 50);
        CHECK(lower_bound(random, 1) <= lower_bound(random));
    }
}

TEST_CASE("an even split with no travel bounds at the even share") {
    Instance raw;
    raw.n = 2;
    raw.m = 2;
    raw.l = 4;
    raw.delta = 0;
    raw.p = {10, 10};
    raw.bay = {2, 3};
    raw.crane_pos0 = {2, 3};
    raw.crane_ready = {0, 0};
    const Instance inst = make_instance(std::move(raw));
    // Both tasks sit on their crane's initial bay: no travel, even load.
    CHECK(lower_bound(inst) == 10);
}

TEST_CASE("relative gap in percent, two decimals") {
    CHECK(relative_gap(453, 453) == 0.00);
    CHECK(relative_gap(710.4, 672) == 5.71);
    CHECK(relative_gap(888, 885) == 0.34);
    CHECK(relative_gap(413, 408) == 1.23);
    CHECK(relative_gap(400, 408) == -1.96);

    // Scale invariance: the gap depends only on the ratio. Two-decimal
    // rounding can flip by one step when the scaled quotient lands a
    // few ulps away, hence the one-step tolerance.
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const double ref = 1 + double(rng() % 10000) / 10.0;
        const double alg = ref * (0.5 + double(rng() % 2000) / 1000.0);
        const double scale = 1 + double(rng() % 50);
        CHECK(std::abs(relative_gap(alg, ref) - relative_gap(alg * scale, ref * scale)) <=
              0.01000001);
    }

    CHECK_THROWS_AS(relative_gap(100, 0), input_error);
    CHECK_THROWS_AS(relative_gap(100, -5), input_error);
}
