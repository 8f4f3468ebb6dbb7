#include "oncat/bosonization.hpp"

namespace oncat {

BosonizedAlgebraQ make_bosonization(const StructurePtr& s) {
    return BosonizedAlgebraQ(s->pbw(), CycScalarField::make(s->N()));
}

}  // namespace oncat
