#include "common/fixtures.hpp"

#include "qcsp/feasibility.hpp"
#include "qcsp/harness.hpp"
#include "qcsp/rng.hpp"
#include "qcsp/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace qcsp::testing {

Instance table1() {
    Instance raw;
    raw.n = 8;
    raw.m = 2;
    raw.l = 8;
    raw.delta = 1;
    raw.t0 = 1;
    raw.p = {55, 121, 70, 129, 134, 143, 98, 43};
    raw.bay = {1, 1, 2, 4, 5, 5, 7, 8};
    raw.crane_pos0 = {4, 8};
    raw.crane_ready = {0, 0};
    raw.phi = {{1, 2}, {5, 6}};
    raw.psi = {{1, 2}, {1, 3}, {2, 3}, {4, 5}, {4, 6}, {5, 6}, {7, 8}};
    return make_instance(std::move(raw));
}

Time separation_oracle(int bay_i, int bay_j, int v, int w, int delta, Time t0,
                       bool distinct_tasks) {
    if (!distinct_tasks) return 0;
    if (v == w) return static_cast<Time>(std::abs(bay_i - bay_j)) * t0;
    const int margin = (delta + 1) * std::abs(v - w);
    if (v > w) {
        // v works above w; it blocks w's target unless it already sits
        // at least `margin` bays above bay_j, and otherwise must climb
        // from bay_i to bay_j + margin.
        const int target = bay_j + margin;
        return bay_i < target ? static_cast<Time>(target - bay_i) * t0 : 0;
    }
    // v below w: mirror image, v must descend to bay_j - margin.
    const int target = bay_j - margin;
    return bay_i > target ? static_cast<Time>(bay_i - target) * t0 : 0;
}

Instance random_instance(std::mt19937_64& rng, int n_min, int n_max, int m_max,
                         Time p_max) {
    GeneratorConfig cfg;
    cfg.n = n_min + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n_max - n_min + 1)));
    // With delta = 1 the quay (l = n bays) keeps every bay reachable
    // only up to n / 2 cranes: at (n + 1) / 2 the cranes still fit on
    // the rail, but the even bays squeeze out of everyone's range.
    const int fit_cap = std::max(1, cfg.n / 2);
    const int cap = std::min(m_max, fit_cap);
    cfg.m = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(cap)));
    cfg.p_min = 1;
    cfg.p_max = p_max;
    cfg.delta = 1;
    cfg.t0 = 1;
    cfg.seed = rng();
    Instance inst = generate_instance(cfg);
    if (uniform_below(rng, 2) == 0) {
        for (auto& r : inst.crane_ready) r = static_cast<Time>(uniform_below(rng, 4));
        inst = make_instance(std::move(inst));
    }
    return inst;
}

Assignment random_eligible_assignment(const Instance& inst, std::mt19937_64& rng) {
    Assignment a;
    a.crane.reserve(inst.n);
    for (int t = 1; t <= inst.n; ++t) {
        const auto options = eligible_cranes(inst, inst.bay[t - 1]);
        a.crane.push_back(options[uniform_below(rng, options.size())]);
    }
    return a;
}

std::uint64_t assignment_space(const Instance& inst, std::uint64_t cap) {
    std::uint64_t space = 1;
    for (const auto& set : eligible_sets(inst)) {
        space *= set.size();
        if (space >= cap) return cap;
    }
    return space;
}

bool crane_motion_feasible(const Instance& inst, const Schedule& sched) {
    if (inst.t0 != 1)
        throw std::logic_error("crane_motion_feasible requires t0 == 1");
    if (static_cast<int>(sched.start.size()) != inst.n ||
        static_cast<int>(sched.completion.size()) != inst.n ||
        static_cast<int>(sched.assignment.crane.size()) != inst.n)
        throw std::logic_error("schedule shape does not match instance");

    const int m = inst.m;
    const int base = inst.l + 1;
    std::uint64_t states = 1;
    for (int k = 0; k < m; ++k) states *= static_cast<std::uint64_t>(base);
    if (states > (1u << 24))
        throw std::logic_error("instance too large to simulate");

    Time horizon = 0;
    for (const Time c : sched.completion) horizon = std::max(horizon, c);

    // A crane cannot work before it becomes available, even on a task
    // at its parking bay.
    for (int i = 1; i <= inst.n; ++i) {
        const int k = sched.assignment.crane[i - 1];
        if (k >= 1 && k <= m && sched.start[i - 1] < inst.crane_ready[k - 1]) return false;
    }

    // A crane processes one task at a time; same-bay pins would agree,
    // so strict time overlap on one crane is rejected outright.
    for (int i = 1; i <= inst.n; ++i)
        for (int j = i + 1; j <= inst.n; ++j) {
            if (sched.assignment.crane[i - 1] != sched.assignment.crane[j - 1]) continue;
            if (sched.start[i - 1] < sched.completion[j - 1] &&
                sched.start[j - 1] < sched.completion[i - 1])
                return false;
        }

    // pinned[k] is the bay crane k+1 must occupy at the current tick,
    // or 0 when it is free to move.
    std::vector<int> pinned(m);
    auto compute_pins = [&](Time t) -> bool {
        std::fill(pinned.begin(), pinned.end(), 0);
        for (int i = 1; i <= inst.n; ++i) {
            if (sched.start[i - 1] > t || t > sched.completion[i - 1]) continue;
            const int k = sched.assignment.crane[i - 1];
            if (k < 1 || k > m) return false;
            if (pinned[k - 1] != 0 && pinned[k - 1] != inst.bay[i - 1]) return false;
            pinned[k - 1] = inst.bay[i - 1];
        }
        return true;
    };

    auto encode = [&](const std::vector<int>& pos) {
        std::uint64_t code = 0;
        for (int k = m - 1; k >= 0; --k) code = code * base + pos[k];
        return code;
    };

    auto positions_ok = [&](const std::vector<int>& pos) {
        for (int k = 0; k < m; ++k)
            if (pos[k] < 1 || pos[k] > inst.l) return false;
        for (int k = 0; k + 1 < m; ++k)
            if (pos[k + 1] - pos[k] < inst.delta + 1) return false;
        for (int k = 0; k < m; ++k)
            if (pinned[k] != 0 && pos[k] != pinned[k]) return false;
        return true;
    };

    if (!compute_pins(0)) return false;
    std::vector<int> pos = inst.crane_pos0;
    if (!positions_ok(pos)) return false;

    int combos = 1;
    for (int k = 0; k < m; ++k) combos *= 3;

    std::vector<std::uint64_t> frontier{encode(pos)};
    std::vector<std::uint64_t> next_frontier;
    std::vector<char> seen(states, 0);
    std::vector<int> npos(m);

    for (Time t = 0; t < horizon; ++t) {
        if (!compute_pins(t + 1)) return false;
        next_frontier.clear();
        std::fill(seen.begin(), seen.end(), 0);
        for (const std::uint64_t code : frontier) {
            std::uint64_t rem = code;
            for (int k = 0; k < m; ++k) {
                pos[k] = static_cast<int>(rem % base);
                rem /= base;
            }
            for (int combo = 0; combo < combos; ++combo) {
                int c = combo;
                bool legal = true;
                for (int k = 0; k < m; ++k) {
                    const int d = c % 3 - 1;
                    c /= 3;
                    if (d != 0 && t < inst.crane_ready[k]) {
                        legal = false;
                        break;
                    }
                    npos[k] = pos[k] + d;
                }
                if (!legal || !positions_ok(npos)) continue;
                const std::uint64_t ncode = encode(npos);
                if (!seen[ncode]) {
                    seen[ncode] = 1;
                    next_frontier.push_back(ncode);
                }
            }
        }
        if (next_frontier.empty()) return false;
        frontier.swap(next_frontier);
    }
    return true;
}

} // namespace qcsp::testing
