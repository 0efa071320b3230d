#pragma once

// Canonical encodings of the standard infinite examples.

#include "muna/presentation.hpp"

namespace muna::catalog {

/// The bi-infinite path: one port carrying one backward ray.
Presentation integers();
/// (N, x -> max(x-1, 0)): a fixpoint carrying one backward ray.
Presentation naturals_with_decrement();
/// A forward ray whose origin receives one finite line of every length.
Presentation comb();
/// Two backward rays merging into a forward ray; not residually finite.
Presentation merging_rays();
/// Every n-line glued at a looped zero: a fixpoint carrying a fan.
Presentation glued_lines();
/// Two leaves feeding a forward ray; backwards-bounded.
Presentation forest_into_ray();

}  // namespace muna::catalog
