#pragma once

#include "qcsp/decode.hpp"
#include "qcsp/instance.hpp"
#include "qcsp/schedule.hpp"

#include <cstdint>
#include <optional>

namespace qcsp {

// Exhaustive search over all eligible assignments, decoding each one
// both ways. Returns the best schedule found; ties go to the
// lexicographically smallest assignment. Throws input_error when the
// number of assignments exceeds `limit` (refusing to start a run that
// cannot finish) and decode_error if no assignment decodes.
Schedule brute_force_best(const Instance& inst, std::uint64_t limit = 20'000'000);

// Lower bound on the optimal makespan: the best over eligible
// assignments of the busiest crane's ready time + workload + one final
// travel, ignoring interference and ordering. Searched exactly by
// branch and bound; if the node budget runs out, falls back to the
// weaker bound max(per-task floor, average-load ceiling), which never
// overshoots.
Time lower_bound(const Instance& inst, std::uint64_t node_budget = 20'000'000);

// Relative gap of an algorithm's value against a reference value, in
// percent, rounded to two decimals. Throws input_error when f_ref <= 0.
double relative_gap(double f_alg, double f_ref);

} // namespace qcsp
