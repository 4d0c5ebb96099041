#include "qcsp/feasibility.hpp"

#include <algorithm>
#include <numeric>

namespace qcsp {

std::string to_string(ConstraintTag tag) {
    switch (tag) {
    case ConstraintTag::C3_3: return "C3.3";
    case ConstraintTag::C3_4: return "C3.4";
    case ConstraintTag::C3_5: return "C3.5";
    case ConstraintTag::C3_6: return "C3.6";
    case ConstraintTag::C3_7: return "C3.7";
    case ConstraintTag::C3_10: return "C3.10";
    case ConstraintTag::C3_11: return "C3.11";
    case ConstraintTag::C3_12: return "C3.12";
    }
    return "?";
}

Time makespan(const Schedule& sched) {
    if (sched.completion.empty()) throw input_error("schedule has no tasks");
    return *std::max_element(sched.completion.begin(), sched.completion.end());
}

ViolationReport check(const Instance& inst, const Schedule& sched) {
    const int n = inst.n;
    if (static_cast<int>(sched.start.size()) != n ||
        static_cast<int>(sched.completion.size()) != n ||
        static_cast<int>(sched.assignment.crane.size()) != n)
        throw input_error("schedule dimensions do not match the instance");
    for (int i = 1; i <= n; ++i) {
        if (sched.start[i - 1] < 0)
            throw input_error("task " + std::to_string(i) + " has a negative start time");
        if (sched.completion[i - 1] != sched.start[i - 1] + inst.p[i - 1])
            throw input_error("task " + std::to_string(i) +
                              " completion does not equal start plus processing time");
    }

    const auto& q = sched.assignment.crane;
    const auto& s = sched.start;
    const auto& c = sched.completion;
    auto crane_ok = [&](int i) { return q[i - 1] >= 1 && q[i - 1] <= inst.m; };

    ViolationReport rep;

    for (int i = 1; i <= n; ++i) {
        if (!crane_ok(i)) {
            rep.violations.push_back({ConstraintTag::C3_4, i, 0, q[i - 1], 0, 0});
            continue;
        }
        if (c[i - 1] > sched.makespan)
            rep.violations.push_back(
                {ConstraintTag::C3_3, i, 0, q[i - 1], 0, c[i - 1] - sched.makespan});
        const int k = q[i - 1];
        const Time floor = inst.crane_ready[k - 1] + travel_time_from_start(inst, k, i) +
                           inst.p[i - 1];
        if (c[i - 1] < floor)
            rep.violations.push_back({ConstraintTag::C3_5, i, 0, k, 0, floor - c[i - 1]});
    }

    for (const auto& [i, j] : inst.phi)
        if (c[i - 1] > s[j - 1])
            rep.violations.push_back({ConstraintTag::C3_6, i, j,
                                      crane_ok(i) ? q[i - 1] : 0, crane_ok(j) ? q[j - 1] : 0,
                                      c[i - 1] - s[j - 1]});

    for (const auto& [i, j] : inst.psi)
        if (c[i - 1] > s[j - 1] && c[j - 1] > s[i - 1])
            rep.violations.push_back({ConstraintTag::C3_7, i, j,
                                      crane_ok(i) ? q[i - 1] : 0, crane_ok(j) ? q[j - 1] : 0,
                                      std::min(c[i - 1] - s[j - 1], c[j - 1] - s[i - 1])});

    // cross-crane interference: either order must leave room for the
    // yielding crane to clear the safety margin
    for (int i = 1; i <= n; ++i) {
        if (!crane_ok(i)) continue;
        for (int j = i + 1; j <= n; ++j) {
            if (!crane_ok(j) || q[i - 1] == q[j - 1]) continue;
            const int v = q[i - 1], w = q[j - 1];
            const Time dt = min_travel_time(inst, i, j, v, w);
            if (dt == 0) continue;
            if (c[i - 1] <= s[j - 1]) {
                if (s[j - 1] < c[i - 1] + dt)
                    rep.violations.push_back(
                        {ConstraintTag::C3_11, i, j, v, w, c[i - 1] + dt - s[j - 1]});
            } else if (c[j - 1] <= s[i - 1]) {
                if (s[i - 1] < c[j - 1] + dt)
                    rep.violations.push_back(
                        {ConstraintTag::C3_12, i, j, v, w, c[j - 1] + dt - s[i - 1]});
            } else {
                rep.violations.push_back(
                    {ConstraintTag::C3_10, i, j, v, w,
                     std::min(c[i - 1] - s[j - 1], c[j - 1] - s[i - 1])});
                if (s[i - 1] <= s[j - 1])
                    rep.violations.push_back(
                        {ConstraintTag::C3_11, i, j, v, w, c[i - 1] + dt - s[j - 1]});
                else
                    rep.violations.push_back(
                        {ConstraintTag::C3_12, i, j, v, w, c[j - 1] + dt - s[i - 1]});
            }
        }
    }

    // consecutive tasks of one crane must leave room for the travel
    // between their bays
    for (int k = 1; k <= inst.m; ++k) {
        std::vector<int> mine;
        for (int i = 1; i <= n; ++i)
            if (crane_ok(i) && q[i - 1] == k) mine.push_back(i);
        std::sort(mine.begin(), mine.end(), [&](int a, int b) {
            if (s[a - 1] != s[b - 1]) return s[a - 1] < s[b - 1];
            return a < b;
        });
        for (size_t t = 1; t < mine.size(); ++t) {
            const int f = mine[t - 1], g = mine[t];
            const Time need =
                c[f - 1] + Time(std::abs(inst.bay[f - 1] - inst.bay[g - 1])) * inst.t0;
            if (s[g - 1] < need) {
                if (f < g)
                    rep.violations.push_back(
                        {ConstraintTag::C3_11, f, g, k, k, need - s[g - 1]});
                else
                    rep.violations.push_back(
                        {ConstraintTag::C3_12, g, f, k, k, need - s[g - 1]});
            }
        }
    }

    return rep;
}

} // namespace qcsp
