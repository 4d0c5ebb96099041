#pragma once

#include "qcsp/instance.hpp"
#include "qcsp/schedule.hpp"

namespace qcsp {

// Workload-split seed: walks the tasks in order, handing each to the
// current crane and advancing to the next crane once its accumulated
// processing time exceeds the even share sum(p)/m. The raw split is
// then clamped task by task into the eligible crane range.
Assignment s_load(const Instance& inst);

// Count-split seed: cuts the task sequence into m contiguous blocks of
// near-equal size (ceil(n/m) first, the remainder spread over the
// leading blocks), one block per crane, then clamps into the eligible
// range.
Assignment s_tasks(const Instance& inst);

// Clamps each task's crane into its eligible range.
Assignment clamp_to_eligible(const Instance& inst, Assignment a);

} // namespace qcsp
