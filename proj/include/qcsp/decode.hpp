#pragma once

#include "qcsp/instance.hpp"
#include "qcsp/schedule.hpp"

#include <vector>

namespace qcsp {

// Throws input_error unless the assignment holds exactly one crane id
// in 1..m per task.
void validate_assignment(const Instance& inst, const Assignment& a);

// Tasks of each crane in ascending task order; result[k-1] lists the
// tasks of crane k.
std::vector<std::vector<int>> per_crane_tasks(const Instance& inst,
                                              const Assignment& a);

// The bay-mirrored twin of an instance, with the maps linking its
// canonical task/crane ids back to the original ones.
struct ReversedInstance {
    Instance inst;
    std::vector<int> task_map;  // task_map[t-1] = reversed id of original task t
    std::vector<int> crane_map; // crane_map[k-1] = reversed id of original crane k
};

// Mirrors all bay positions (bay -> l + 1 - bay) and re-canonicalizes.
// Interference waits are invariant under the mirror, so a schedule of
// the reversed instance maps 1:1 onto the original.
ReversedInstance reverse_instance(const Instance& inst);

// Earliest-start schedule for the assignment, giving way in ascending
// task order: whenever two tasks on different cranes interfere, the
// higher-indexed task waits. Start times are the least fixed point of
// the ready/chain, interference, and ordering bounds. Throws
// decode_error when the bounds admit no fixed point (possible only
// with precedence pairs that oppose the task numbering) and
// input_error for an invalid assignment.
Schedule decode_upward(const Instance& inst, const Assignment& a);

// Decodes the assignment both ways (as-is, and on the bay-mirrored
// instance with the result mapped back) and returns the schedule with
// the smaller makespan, preferring the unmirrored one on ties. Throws
// decode_error only if both directions fail.
Schedule decode_best(const Instance& inst, const Assignment& a);

// Which of the two decoders the search should use.
enum class DirectionMode { best_of_two, upward_only };

Schedule decode(const Instance& inst, const Assignment& a, DirectionMode mode);

} // namespace qcsp
