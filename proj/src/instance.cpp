#include "qcsp/instance.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <utility>

namespace qcsp {

namespace {

void check_task_id(const Instance& inst, int i, const char* what) {
    if (i < 1 || i > inst.n)
        throw input_error(std::string(what) + " refers to unknown task " + std::to_string(i));
}

void check_crane_id(const Instance& inst, int k, const char* what) {
    if (k < 1 || k > inst.m)
        throw input_error(std::string(what) + " refers to unknown crane " + std::to_string(k));
}

void validate_raw(const Instance& raw) {
    if (raw.n < 1) throw input_error("instance needs at least one task");
    if (raw.m < 1) throw input_error("instance needs at least one crane");
    if (raw.l < 1) throw input_error("instance needs at least one bay");
    if (static_cast<int>(raw.p.size()) != raw.n)
        throw input_error("processing-time count does not match task count");
    if (static_cast<int>(raw.bay.size()) != raw.n)
        throw input_error("bay count does not match task count");
    if (static_cast<int>(raw.crane_pos0.size()) != raw.m)
        throw input_error("crane position count does not match crane count");
    if (static_cast<int>(raw.crane_ready.size()) != raw.m)
        throw input_error("crane ready-time count does not match crane count");
    if (raw.t0 < 0) throw input_error("travel time per bay must be non-negative");
    if (raw.delta < 0) throw input_error("safety margin must be non-negative");
    for (int i = 1; i <= raw.n; ++i) {
        if (raw.p[i - 1] <= 0)
            throw input_error("task " + std::to_string(i) + " has non-positive processing time");
        if (raw.bay[i - 1] < 1 || raw.bay[i - 1] > raw.l)
            throw input_error("task " + std::to_string(i) + " lies outside bays 1.." +
                              std::to_string(raw.l));
    }
    for (int k = 1; k <= raw.m; ++k) {
        if (raw.crane_pos0[k - 1] < 1 || raw.crane_pos0[k - 1] > raw.l)
            throw input_error("crane " + std::to_string(k) + " starts outside bays 1.." +
                              std::to_string(raw.l));
        if (raw.crane_ready[k - 1] < 0)
            throw input_error("crane " + std::to_string(k) + " has negative ready time");
    }
    for (const auto& [i, j] : raw.phi) {
        check_task_id(raw, i, "precedence pair");
        check_task_id(raw, j, "precedence pair");
        if (i == j)
            throw input_error("task " + std::to_string(i) + " cannot precede itself");
    }
    for (const auto& [i, j] : raw.psi) {
        check_task_id(raw, i, "non-simultaneity pair");
        check_task_id(raw, j, "non-simultaneity pair");
        if (i == j)
            throw input_error("non-simultaneity pair repeats task " + std::to_string(i));
    }
    std::set<std::pair<int, int>> phi_set(raw.phi.begin(), raw.phi.end());
    for (const auto& [i, j] : phi_set)
        if (phi_set.count({j, i}))
            throw input_error("tasks " + std::to_string(i) + " and " + std::to_string(j) +
                              " precede each other");
}

// Orders the tasks of one bay consistently with the precedence pairs,
// smallest original id first among the currently unconstrained ones.
std::vector<int> order_bay_group(const std::vector<int>& members,
                                 const std::set<std::pair<int, int>>& phi_set, int bay) {
    const int sz = static_cast<int>(members.size());
    std::vector<int> indeg(sz, 0);
    for (int u = 0; u < sz; ++u)
        for (int v = 0; v < sz; ++v)
            if (u != v && phi_set.count({members[u], members[v]})) ++indeg[v];
    std::vector<int> out;
    std::vector<char> placed(sz, 0);
    out.reserve(sz);
    while (static_cast<int>(out.size()) < sz) {
        int pick = -1;
        for (int u = 0; u < sz; ++u)
            if (!placed[u] && indeg[u] == 0 && (pick < 0 || members[u] < members[pick]))
                pick = u;
        if (pick < 0)
            throw input_error("cyclic precedence among the tasks of bay " + std::to_string(bay));
        placed[pick] = 1;
        out.push_back(members[pick]);
        for (int v = 0; v < sz; ++v)
            if (!placed[v] && phi_set.count({members[pick], members[v]})) --indeg[v];
    }
    return out;
}

} // namespace

CanonicalInstance canonicalize(Instance raw) {
    validate_raw(raw);

    std::set<std::pair<int, int>> phi_set(raw.phi.begin(), raw.phi.end());

    // tasks: ascending bay, same-bay groups in precedence order
    std::vector<std::vector<int>> by_bay(raw.l + 1);
    for (int i = 1; i <= raw.n; ++i) by_bay[raw.bay[i - 1]].push_back(i);
    std::vector<int> order; // order[new id - 1] = old id
    order.reserve(raw.n);
    for (int b = 1; b <= raw.l; ++b) {
        if (by_bay[b].empty()) continue;
        auto group = order_bay_group(by_bay[b], phi_set, b);
        order.insert(order.end(), group.begin(), group.end());
    }
    std::vector<int> task_map(raw.n);
    for (int pos = 0; pos < raw.n; ++pos) task_map[order[pos] - 1] = pos + 1;

    // cranes: ascending initial bay, then ready time, then original id
    std::vector<int> crane_order(raw.m);
    std::iota(crane_order.begin(), crane_order.end(), 1);
    std::stable_sort(crane_order.begin(), crane_order.end(), [&](int a, int b) {
        if (raw.crane_pos0[a - 1] != raw.crane_pos0[b - 1])
            return raw.crane_pos0[a - 1] < raw.crane_pos0[b - 1];
        if (raw.crane_ready[a - 1] != raw.crane_ready[b - 1])
            return raw.crane_ready[a - 1] < raw.crane_ready[b - 1];
        return a < b;
    });
    std::vector<int> crane_map(raw.m);
    for (int pos = 0; pos < raw.m; ++pos) crane_map[crane_order[pos] - 1] = pos + 1;

    CanonicalInstance out;
    out.task_map = task_map;
    out.crane_map = crane_map;

    Instance& inst = out.inst;
    inst.n = raw.n;
    inst.m = raw.m;
    inst.l = raw.l;
    inst.t0 = raw.t0;
    inst.delta = raw.delta;
    inst.p.resize(raw.n);
    inst.bay.resize(raw.n);
    for (int old = 1; old <= raw.n; ++old) {
        inst.p[task_map[old - 1] - 1] = raw.p[old - 1];
        inst.bay[task_map[old - 1] - 1] = raw.bay[old - 1];
    }
    inst.crane_pos0.resize(raw.m);
    inst.crane_ready.resize(raw.m);
    for (int old = 1; old <= raw.m; ++old) {
        inst.crane_pos0[crane_map[old - 1] - 1] = raw.crane_pos0[old - 1];
        inst.crane_ready[crane_map[old - 1] - 1] = raw.crane_ready[old - 1];
    }

    std::set<std::pair<int, int>> phi_new;
    for (const auto& [i, j] : raw.phi)
        phi_new.insert({task_map[i - 1], task_map[j - 1]});
    inst.phi.assign(phi_new.begin(), phi_new.end());

    // non-simultaneity pairs are unordered; precedence pairs belong to them
    std::set<std::pair<int, int>> psi_new;
    for (const auto& [i, j] : raw.psi) {
        int a = task_map[i - 1], b = task_map[j - 1];
        psi_new.insert({std::min(a, b), std::max(a, b)});
    }
    for (const auto& [i, j] : inst.phi)
        psi_new.insert({std::min(i, j), std::max(i, j)});
    inst.psi.assign(psi_new.begin(), psi_new.end());

    for (int i = 0; i < raw.n; ++i)
        if (task_map[i] != i + 1) out.reordered = true;
    for (int k = 0; k < raw.m; ++k)
        if (crane_map[k] != k + 1) out.reordered = true;
    return out;
}

Instance make_instance(Instance raw) { return canonicalize(std::move(raw)).inst; }

void validate_instance(const Instance& inst) {
    auto canon = canonicalize(inst);
    if (canon.reordered || !(canon.inst == inst))
        throw input_error("instance is not in canonical form");
}

int crane_gap(int v, int w, int delta) { return (delta + 1) * std::abs(v - w); }

Time travel_time_from_start(const Instance& inst, int k, int i) {
    check_crane_id(inst, k, "travel query");
    check_task_id(inst, i, "travel query");
    return Time(std::abs(inst.bay[i - 1] - inst.crane_pos0[k - 1])) * inst.t0;
}

Time interference_wait(int bay_i, int bay_j, int v, int w, int delta, Time t0,
                       bool distinct_tasks) {
    if (!distinct_tasks) return 0;
    const int gap = crane_gap(v, w, delta);
    if (v > w && bay_i < bay_j + gap) return Time(bay_j - bay_i + gap) * t0;
    if (v < w && bay_i > bay_j - gap) return Time(bay_i - bay_j + gap) * t0;
    if (v == w) return Time(std::abs(bay_i - bay_j)) * t0;
    return 0;
}

Time min_travel_time(const Instance& inst, int i, int j, int v, int w) {
    check_task_id(inst, i, "interference query");
    check_task_id(inst, j, "interference query");
    check_crane_id(inst, v, "interference query");
    check_crane_id(inst, w, "interference query");
    return interference_wait(inst.bay[i - 1], inst.bay[j - 1], v, w, inst.delta, inst.t0,
                             i != j);
}

std::vector<InterferenceQuad> build_theta(const Instance& inst) {
    std::vector<InterferenceQuad> theta;
    for (int i = 1; i <= inst.n; ++i)
        for (int j = i + 1; j <= inst.n; ++j)
            for (int v = 1; v <= inst.m; ++v)
                for (int w = 1; w <= inst.m; ++w) {
                    Time dt = min_travel_time(inst, i, j, v, w);
                    if (dt > 0) theta.push_back({i, j, v, w, dt});
                }
    return theta;
}

} // namespace qcsp
