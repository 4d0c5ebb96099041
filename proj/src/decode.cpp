#include "qcsp/decode.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace qcsp {

void validate_assignment(const Instance& inst, const Assignment& a) {
    if (static_cast<int>(a.crane.size()) != inst.n)
        throw input_error("assignment length does not match the task count");
    for (int j = 1; j <= inst.n; ++j)
        if (a.crane[j - 1] < 1 || a.crane[j - 1] > inst.m)
            throw input_error("task " + std::to_string(j) + " is assigned to unknown crane " +
                              std::to_string(a.crane[j - 1]));
}

std::vector<std::vector<int>> per_crane_tasks(const Instance& inst, const Assignment& a) {
    validate_assignment(inst, a);
    std::vector<std::vector<int>> by(inst.m);
    for (int j = 1; j <= inst.n; ++j) by[a.crane[j - 1] - 1].push_back(j);
    return by;
}

Schedule decode_upward(const Instance& inst, const Assignment& a) {
    validate_assignment(inst, a);
    const int n = inst.n;

    // previous task of the same crane, 0 when first
    std::vector<int> prev(n + 1, 0);
    {
        std::vector<int> last(inst.m + 1, 0);
        for (int j = 1; j <= n; ++j) {
            prev[j] = last[a.crane[j - 1]];
            last[a.crane[j - 1]] = j;
        }
    }

    // ordering bounds: precedence pairs as given; non-simultaneous pairs
    // without a precedence orientation run in ascending task order
    std::vector<std::vector<int>> before(n + 1);
    {
        std::set<std::pair<int, int>> phi_set(inst.phi.begin(), inst.phi.end());
        for (const auto& [i, j] : inst.phi) before[j].push_back(i);
        for (const auto& [i, j] : inst.psi)
            if (!phi_set.count({i, j}) && !phi_set.count({j, i})) before[j].push_back(i);
    }

    // least fixed point of all start-time bounds; every bound is
    // monotone, so values only grow and a cycle grows without limit
    std::vector<Time> s(n + 1, 0), c(n + 1, 0);
    for (int j = 1; j <= n; ++j) c[j] = inst.p[j - 1];
    const int max_sweeps = std::max(2, n * inst.m);
    for (int sweep = 0;; ++sweep) {
        if (sweep >= max_sweeps)
            throw decode_error("start times do not stabilize; the precedence pairs "
                               "oppose the task ordering");
        bool changed = false;
        for (int j = 1; j <= n; ++j) {
            const int w = a.crane[j - 1];
            Time lb;
            if (prev[j] == 0)
                lb = inst.crane_ready[w - 1] + travel_time_from_start(inst, w, j);
            else
                lb = c[prev[j]] + min_travel_time(inst, prev[j], j, w, w);
            for (int i = 1; i < j; ++i) {
                if (a.crane[i - 1] == w) continue;
                const Time dt = min_travel_time(inst, i, j, a.crane[i - 1], w);
                if (dt > 0) lb = std::max(lb, c[i] + dt);
            }
            for (int x : before[j])
                lb = std::max(lb, c[x] + min_travel_time(inst, x, j, a.crane[x - 1], w));
            if (lb > s[j]) {
                s[j] = lb;
                changed = true;
            }
            c[j] = s[j] + inst.p[j - 1];
        }
        if (!changed) break;
    }

    Schedule sched;
    sched.assignment = a;
    sched.direction = Direction::upward;
    sched.start.assign(s.begin() + 1, s.end());
    sched.completion.assign(c.begin() + 1, c.end());
    sched.makespan = *std::max_element(sched.completion.begin(), sched.completion.end());
    return sched;
}

ReversedInstance reverse_instance(const Instance& inst) {
    Instance raw = inst;
    for (auto& b : raw.bay) b = inst.l + 1 - b;
    for (auto& b : raw.crane_pos0) b = inst.l + 1 - b;
    auto canon = canonicalize(std::move(raw));
    return {std::move(canon.inst), std::move(canon.task_map), std::move(canon.crane_map)};
}

Schedule decode_best(const Instance& inst, const Assignment& a) {
    validate_assignment(inst, a);

    std::optional<Schedule> up;
    try {
        up = decode_upward(inst, a);
    } catch (const decode_error&) {
    }

    std::optional<Schedule> down;
    const ReversedInstance rev = reverse_instance(inst);
    Assignment mirrored;
    mirrored.crane.resize(inst.n);
    for (int t = 1; t <= inst.n; ++t)
        mirrored.crane[rev.task_map[t - 1] - 1] = rev.crane_map[a.crane[t - 1] - 1];
    try {
        const Schedule rs = decode_upward(rev.inst, mirrored);
        Schedule d;
        d.assignment = a;
        d.direction = Direction::downward;
        d.start.resize(inst.n);
        d.completion.resize(inst.n);
        for (int t = 1; t <= inst.n; ++t) {
            d.start[t - 1] = rs.start[rev.task_map[t - 1] - 1];
            d.completion[t - 1] = rs.completion[rev.task_map[t - 1] - 1];
        }
        d.makespan = rs.makespan;
        down = std::move(d);
    } catch (const decode_error&) {
    }

    if (!up && !down)
        throw decode_error("neither direction admits a schedule for this assignment");
    if (up && (!down || up->makespan <= down->makespan)) return *up;
    return *down;
}

Schedule decode(const Instance& inst, const Assignment& a, DirectionMode mode) {
    return mode == DirectionMode::upward_only ? decode_upward(inst, a)
                                              : decode_best(inst, a);
}

} // namespace qcsp
