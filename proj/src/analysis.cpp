#include "qcsp/analysis.hpp"

#include "qcsp/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcsp {

Schedule brute_force_best(const Instance& inst, std::uint64_t limit) {
    const auto eligible = eligible_sets(inst);
    std::uint64_t space = 1;
    for (const auto& set : eligible) {
        if (space > limit / set.size())
            throw input_error("eligible-assignment space exceeds the enumeration limit");
        space *= set.size();
    }
    if (space > limit)
        throw input_error("eligible-assignment space exceeds the enumeration limit");

    Assignment a;
    a.crane.resize(inst.n);
    std::vector<size_t> idx(inst.n, 0);
    for (int j = 0; j < inst.n; ++j) a.crane[j] = eligible[j][0];

    std::optional<Schedule> best;
    // lexicographic enumeration with a strict improvement test keeps the
    // lexicographically smallest assignment among ties
    for (bool more = true; more;) {
        try {
            Schedule sched = decode_best(inst, a);
            if (!best || sched.makespan < best->makespan) best = std::move(sched);
        } catch (const decode_error&) {
        }
        more = false;
        for (int pos = inst.n; pos-- > 0;) {
            if (++idx[pos] < eligible[pos].size()) {
                a.crane[pos] = eligible[pos][idx[pos]];
                more = true;
                break;
            }
            idx[pos] = 0;
            a.crane[pos] = eligible[pos][0];
        }
    }
    if (!best) throw decode_error("no eligible assignment admits a schedule");
    return *best;
}

namespace {

struct LoadBoundSearch {
    const Instance& inst;
    const std::vector<std::pair<int, int>>& ranges;
    std::vector<Time> load;       // processing time placed on each crane
    std::vector<Time> max_travel; // largest one-way travel placed on each crane
    Time best;
    std::uint64_t nodes_left;
    bool exhausted = false;

    Time crane_value(int k) const {
        if (load[k - 1] == 0) return 0;
        return inst.crane_ready[k - 1] + load[k - 1] + max_travel[k - 1];
    }

    void place(int task, Time current_max) {
        if (nodes_left == 0) {
            exhausted = true;
            return;
        }
        --nodes_left;
        if (current_max >= best) return;
        if (task > inst.n) {
            best = current_max;
            return;
        }
        const auto [lo, hi] = ranges[task - 1];
        for (int k = lo; k <= hi && !exhausted; ++k) {
            const Time saved_load = load[k - 1];
            const Time saved_travel = max_travel[k - 1];
            load[k - 1] += inst.p[task - 1];
            max_travel[k - 1] =
                std::max(max_travel[k - 1], travel_time_from_start(inst, k, task));
            place(task + 1, std::max(current_max, crane_value(k)));
            load[k - 1] = saved_load;
            max_travel[k - 1] = saved_travel;
        }
    }
};

// smallest T with sum over cranes of max(0, T - ready) >= total work
Time workload_waterline(const Instance& inst) {
    const Time total = std::accumulate(inst.p.begin(), inst.p.end(), Time(0));
    std::vector<Time> ready = inst.crane_ready;
    std::sort(ready.begin(), ready.end());
    Time ready_prefix = 0;
    for (int u = 1; u <= inst.m; ++u) {
        ready_prefix += ready[u - 1];
        const Time cand = (total + ready_prefix + u - 1) / u; // ceil
        const bool within = u == inst.m || cand <= ready[u];
        if (cand >= ready[u - 1] && within) return cand;
    }
    return (total + ready_prefix + inst.m - 1) / inst.m;
}

} // namespace

Time lower_bound(const Instance& inst, std::uint64_t node_budget) {
    std::vector<std::pair<int, int>> ranges(inst.n);
    for (int j = 1; j <= inst.n; ++j) ranges[j - 1] = eligible_range(inst, inst.bay[j - 1]);

    const Time waterline = workload_waterline(inst);
    Time forced = 0;
    {
        std::vector<Time> load(inst.m, 0), travel(inst.m, 0);
        for (int j = 1; j <= inst.n; ++j) {
            const auto [lo, hi] = ranges[j - 1];
            if (lo != hi) continue;
            load[lo - 1] += inst.p[j - 1];
            travel[lo - 1] = std::max(travel[lo - 1], travel_time_from_start(inst, lo, j));
        }
        for (int k = 1; k <= inst.m; ++k)
            if (load[k - 1] > 0)
                forced = std::max(forced, inst.crane_ready[k - 1] + load[k - 1] + travel[k - 1]);
    }

    // greedy seed: a real assignment value, so the search prunes early
    Time seed = 0;
    {
        std::vector<Time> load(inst.m, 0), travel(inst.m, 0);
        for (int j = 1; j <= inst.n; ++j) {
            const auto [lo, hi] = ranges[j - 1];
            int pick = lo;
            Time pick_value = 0;
            for (int k = lo; k <= hi; ++k) {
                const Time value = inst.crane_ready[k - 1] + load[k - 1] + inst.p[j - 1] +
                                   std::max(travel[k - 1], travel_time_from_start(inst, k, j));
                if (k == lo || value < pick_value) {
                    pick = k;
                    pick_value = value;
                }
            }
            load[pick - 1] += inst.p[j - 1];
            travel[pick - 1] =
                std::max(travel[pick - 1], travel_time_from_start(inst, pick, j));
        }
        for (int k = 1; k <= inst.m; ++k)
            if (load[k - 1] > 0)
                seed = std::max(seed, inst.crane_ready[k - 1] + load[k - 1] + travel[k - 1]);
    }

    LoadBoundSearch search{inst, ranges, std::vector<Time>(inst.m, 0),
                           std::vector<Time>(inst.m, 0), seed, node_budget};
    search.place(1, 0);
    if (search.exhausted) return std::max(waterline, forced);
    return search.best;
}

double relative_gap(double f_alg, double f_ref) {
    if (!(f_ref > 0)) throw input_error("reference value must be positive");
    return std::round((f_alg - f_ref) / f_ref * 10000.0) / 100.0;
}

} // namespace qcsp
