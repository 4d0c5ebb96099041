#pragma once

#include "qcsp/types.hpp"

#include <utility>
#include <vector>

namespace qcsp {

// A quay crane scheduling instance.
//
// Tasks are numbered 1..n in non-decreasing bay order; tasks sharing a
// bay are ordered consistently with the precedence pairs. Cranes are
// numbered 1..m in non-decreasing order of their initial bay position.
// Use make_instance()/canonicalize() to obtain an instance in this
// canonical form from raw data; afterwards treat all fields as
// immutable. Task and crane ids in every interface are 1-based; the
// vectors below store task t at index t-1 and crane k at index k-1.
struct Instance {
    int n = 0;                            // number of tasks
    int m = 0;                            // number of cranes
    int l = 0;                            // number of bays
    std::vector<Time> p;                  // processing time per task (> 0)
    std::vector<int> bay;                 // bay per task, in 1..l
    std::vector<int> crane_pos0;          // initial bay per crane
    std::vector<Time> crane_ready;        // earliest ready time per crane
    Time t0 = 1;                          // travel time per bay
    int delta = 0;                        // safety margin between cranes, in bays
    std::vector<std::pair<int, int>> phi; // precedence pairs (pred, succ)
    std::vector<std::pair<int, int>> psi; // non-simultaneous pairs, stored with first < second

    bool operator==(const Instance&) const = default;
};

// Canonicalization result: the reordered instance plus the renumbering
// that was applied. task_map[t-1] is the new id of raw task t,
// crane_map[k-1] the new id of raw crane k; both are identity (and
// reordered is false) when the raw data was already canonical.
struct CanonicalInstance {
    Instance inst;
    std::vector<int> task_map;
    std::vector<int> crane_map;
    bool reordered = false;
};

// Validates raw data and renumbers tasks and cranes into canonical
// order. Non-simultaneity pairs are normalized (first < second,
// deduplicated) and extended with the precedence pairs, which are
// non-simultaneous by definition. Throws input_error on bad data,
// including cyclic precedence among same-bay tasks.
CanonicalInstance canonicalize(Instance raw);

// Convenience wrapper that drops the renumbering maps.
Instance make_instance(Instance raw);

// Checks the invariants of an already-canonical instance.
void validate_instance(const Instance& inst);

// Smallest allowed bay distance between cranes v and w.
int crane_gap(int v, int w, int delta);

// Travel time of crane k from its initial position to task i's bay.
Time travel_time_from_start(const Instance& inst, int k, int i);

// Minimum time that must elapse between finishing task at bay_i (on
// crane v) and starting task at bay_j (on crane w) so that the cranes
// never come closer than the safety margin and never cross. This is
// the four-case rule at the heart of the interference model:
//  - v above w and bay_i within w's working margin: v must clear upward;
//  - v below w and bay_i within w's working margin: v must clear downward;
//  - same crane: plain travel between the two bays;
//  - otherwise no wait.
Time interference_wait(int bay_i, int bay_j, int v, int w, int delta, Time t0,
                       bool distinct_tasks);

// interference_wait() for tasks i, j of an instance served by cranes v, w.
Time min_travel_time(const Instance& inst, int i, int j, int v, int w);

// A (task, task, crane, crane) combination whose simultaneous or
// back-to-back processing forces a positive wait dt.
struct InterferenceQuad {
    int i = 0, j = 0; // tasks, i < j
    int v = 0, w = 0; // crane serving i, crane serving j
    Time dt = 0;      // required separation when i precedes j

    bool operator==(const InterferenceQuad&) const = default;
};

// All interference combinations of an instance: every task pair i < j
// against every ordered crane pair (v, w) with a positive wait.
std::vector<InterferenceQuad> build_theta(const Instance& inst);

} // namespace qcsp
