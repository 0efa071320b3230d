#include "muna/catalog.hpp"

namespace muna::catalog {

Presentation integers() { return PresentationBuilder(1).port(0).ray(0).build(); }

Presentation naturals_with_decrement() { return PresentationBuilder(1).edge(0, 0).ray(0).build(); }

Presentation comb() { return PresentationBuilder(1).port(0).fan(0).build(); }

Presentation merging_rays() { return PresentationBuilder(1).port(0).ray(0, 2).build(); }

Presentation glued_lines() { return PresentationBuilder(1).edge(0, 0).fan(0).build(); }

Presentation forest_into_ray() { return PresentationBuilder(3).edge(0, 2).edge(1, 2).port(2).build(); }

}  // namespace muna::catalog
