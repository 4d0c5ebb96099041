#pragma once

#include "qcsp/instance.hpp"
#include "qcsp/schedule.hpp"

#include <string>
#include <vector>

namespace qcsp {

// Constraint families of the scheduling model, used to tag violations.
enum class ConstraintTag {
    C3_3,  // task must finish within the makespan
    C3_4,  // task must be served by a valid crane
    C3_5,  // completion >= crane ready + travel + processing
    C3_6,  // precedence: successor may not start before predecessor ends
    C3_7,  // non-simultaneous pair overlaps in time
    C3_10, // interfering pair overlaps in time
    C3_11, // gap after the lower-indexed task is too short
    C3_12, // gap after the higher-indexed task is too short
};

std::string to_string(ConstraintTag tag);

// One violated constraint. i, j are the tasks involved (j = 0 for
// single-task constraints), v, w their cranes, and slack the amount by
// which the constraint is missed.
struct Violation {
    ConstraintTag tag;
    int i = 0;
    int j = 0;
    int v = 0;
    int w = 0;
    Time slack = 0;
};

struct ViolationReport {
    std::vector<Violation> violations;

    bool feasible() const { return violations.empty(); }
};

// Verifies a timed schedule against every constraint of the model and
// reports all violations found. Throws input_error when the schedule's
// shape does not match the instance (wrong vector lengths, negative
// starts, completion != start + processing), since such a schedule
// cannot be meaningfully checked.
ViolationReport check(const Instance& inst, const Schedule& sched);

// Largest completion time of the schedule.
Time makespan(const Schedule& sched);

} // namespace qcsp
