#include "qcsp/search.hpp"

#include "qcsp/feasibility.hpp"
#include "qcsp/init.hpp"
#include "qcsp/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace qcsp {

std::pair<int, int> eligible_range(const Instance& inst, int bay) {
    if (bay < 1 || bay > inst.l)
        throw input_error("bay " + std::to_string(bay) + " is outside 1.." +
                          std::to_string(inst.l));
    const int span = 1 + inst.delta;
    int lo = 1, hi = inst.m;
    if (bay <= inst.m + (inst.m - 1) * inst.delta) hi = std::min(hi, (bay + inst.delta) / span);
    if (bay >= inst.l - (inst.m - 1) * span) lo = std::max(lo, inst.m - (inst.l - bay) / span);
    if (lo > hi)
        throw input_error("no crane can service bay " + std::to_string(bay) +
                          " under this crane layout");
    return {lo, hi};
}

std::vector<int> eligible_cranes(const Instance& inst, int bay) {
    const auto [lo, hi] = eligible_range(inst, bay);
    std::vector<int> out(hi - lo + 1);
    std::iota(out.begin(), out.end(), lo);
    return out;
}

std::vector<std::vector<int>> eligible_sets(const Instance& inst) {
    std::vector<std::vector<int>> sets(inst.n);
    for (int j = 1; j <= inst.n; ++j) sets[j - 1] = eligible_cranes(inst, inst.bay[j - 1]);
    return sets;
}

std::vector<int> select_mutation_set(int n, int count, std::mt19937_64& rng) {
    if (count < 1 || count > n)
        throw input_error("mutation set size " + std::to_string(count) +
                          " is outside 1.." + std::to_string(n));
    // Floyd's sampling: each value enters with the right probability and
    // the number of draws is exactly `count`
    std::set<int> picked;
    for (int upper = n - count + 1; upper <= n; ++upper) {
        const int t = static_cast<int>(uniform_below(rng, std::uint64_t(upper))) + 1;
        if (!picked.insert(t).second) picked.insert(upper);
    }
    return {picked.begin(), picked.end()};
}

std::vector<NeighborEntry> generate_neighbors(const Instance& inst, const Assignment& base,
                                              const std::vector<int>& tasks,
                                              const std::vector<std::vector<int>>& eligible,
                                              DirectionMode mode) {
    if (tasks.empty()) throw input_error("mutation set is empty");
    std::vector<NeighborEntry> out;
    std::vector<size_t> idx(tasks.size(), 0);
    Assignment cand = base;
    for (bool more = true; more;) {
        bool same = true;
        for (size_t t = 0; t < tasks.size(); ++t) {
            cand.crane[tasks[t] - 1] = eligible[tasks[t] - 1][idx[t]];
            if (cand.crane[tasks[t] - 1] != base.crane[tasks[t] - 1]) same = false;
        }
        if (!same) {
            try {
                Schedule sched = decode(inst, cand, mode);
                out.push_back({cand, sched.makespan, true});
            } catch (const decode_error&) {
            }
        }
        more = false;
        for (size_t pos = tasks.size(); pos-- > 0;) {
            if (++idx[pos] < eligible[tasks[pos] - 1].size()) {
                more = true;
                break;
            }
            idx[pos] = 0;
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const NeighborEntry& a, const NeighborEntry& b) {
                         return a.makespan < b.makespan;
                     });
    return out;
}

int rank_select(int size, double tau, std::mt19937_64& rng) {
    if (size < 1) throw input_error("cannot select from an empty neighbor set");
    for (;;) {
        const double ran = uniform01(rng);
        const int idx = static_cast<int>(uniform_below(rng, std::uint64_t(size)));
        if (ran <= std::pow(double(idx + 1), -tau)) return idx;
    }
}

namespace {

void validate_params(const SearchParams& params) {
    if (!(params.tau > 0)) throw input_error("tau must be positive");
    if (params.max_iters < 1) throw input_error("iteration limit must be at least 1");
    if (params.max_stall < 1) throw input_error("stall limit must be at least 1");
    if (params.policy.cycle.empty()) throw input_error("mutation policy is empty");
    for (int k : params.policy.cycle)
        if (k < 1 || k > 3)
            throw input_error("mutation sizes must lie in 1..3");
}

SolveResult run_search(const Instance& inst, const SearchParams& params) {
    validate_params(params);
    std::mt19937_64 rng(params.seed);
    const auto eligible = eligible_sets(inst);

    Assignment a_c = s_load(inst);
    Schedule best_sched = decode(inst, a_c, params.direction);
    Assignment a_best = a_c;
    Time f_best = best_sched.makespan;
    Time f_inc = f_best;

    SolveResult res;
    res.seed = params.seed;

    bool any_choice = false;
    for (const auto& set : eligible)
        if (set.size() > 1) any_choice = true;
    if (!any_choice) {
        res.best = f_best;
        res.schedule = std::move(best_sched);
        res.iterations = 0;
        return res;
    }

    int stall = 0;
    bool stop = false;
    for (int iter = 1; iter <= params.max_iters && !stop; ++iter) {
        const int n_star = std::min(params.policy.size_for(iter - 1), inst.n);
        for (int cycle = 0; cycle < inst.n; ++cycle) {
            std::vector<int> omega;
            if (n_star == 1)
                omega = {cycle + 1};
            else
                omega = select_mutation_set(inst.n, n_star, rng);
            auto neigh = generate_neighbors(inst, a_c, omega, eligible, params.direction);
            if (neigh.empty()) continue;
            const int pick = rank_select(static_cast<int>(neigh.size()), params.tau, rng);
            a_c = neigh[pick].assignment;
            f_inc = neigh[pick].makespan;
            if (neigh[0].makespan < f_best) {
                f_best = neigh[0].makespan;
                a_best = neigh[0].assignment;
                stall = 0;
            } else if (++stall > params.max_stall) {
                stop = true;
                break;
            }
        }
        res.trace.push_back({iter, f_inc, f_best});
        res.iterations = iter;
    }

    res.best = f_best;
    res.schedule = decode(inst, a_best, params.direction);
    const auto report = check(inst, res.schedule);
    if (!report.feasible())
        throw decode_error("search produced an infeasible schedule");
    return res;
}

} // namespace

SolveResult mgeo_solve(const Instance& inst, const SearchParams& params) {
    return run_search(inst, params);
}

SolveResult geo_solve(const Instance& inst, const SearchParams& params) {
    if (params.policy.cycle.size() != 1)
        throw input_error("fixed-size search needs a single mutation size");
    return run_search(inst, params);
}

} // namespace qcsp
