#pragma once

#include "qcsp/instance.hpp"
#include "qcsp/schedule.hpp"

#include <cstdint>
#include <random>

namespace qcsp::testing {

// The 8-task, 2-crane worked example used throughout the tests.
Instance table1();

// Independent evaluation of the minimum-separation rule, written
// directly from the case guards (which side must clear, and how far)
// rather than from the library's arithmetic.
Time separation_oracle(int bay_i, int bay_j, int v, int w, int delta, Time t0,
                       bool distinct_tasks);

// Random instance in the generator's shape with n in [n_min, n_max],
// a crane count that fits the quay, processing times up to p_max and
// occasionally non-zero crane ready times.
Instance random_instance(std::mt19937_64& rng, int n_min, int n_max, int m_max,
                         Time p_max);

// Uniform draw over each task's eligible cranes.
Assignment random_eligible_assignment(const Instance& inst, std::mt19937_64& rng);

// Number of eligible assignments, saturating at cap.
std::uint64_t assignment_space(const Instance& inst, std::uint64_t cap);

// Ground-truth physical check of a schedule: breadth-first search over
// the joint crane positions, one tick per time unit (requires t0 == 1).
// Cranes move at most one bay per tick, stay inside 1..l, keep the
// safety margin and their order at every tick, sit still before their
// ready times, and are pinned to the task bay for every tick of
// [start, completion]. True iff some joint motion realizes the schedule.
bool crane_motion_feasible(const Instance& inst, const Schedule& sched);

} // namespace qcsp::testing
