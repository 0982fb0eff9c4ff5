#include "ehq/point.hpp"

#include "ehq/errors.hpp"

namespace ehq {

bool point_eq(const Monomial& a, const Monomial& b, const RelationLattice& lattice) {
    Monomial ratio = a / b;
    if (!ratio.is_torsion_free()) return false;
    auto sol = lattice.tracked_solve(ratio, {"p"});
    if (!sol) return false;
    return affine_integer_point(*sol).has_value();
}

bool point_eq(const PointClass& a, const PointClass& b) {
    if (a.level() != b.level())
        throw LevelMismatchError("point_eq: incomparable levels " + std::to_string(a.level()) +
                                 " and " + std::to_string(b.level()));
    if (a.value() == b.value()) return true;
    const RelationLattice* lat = a.lattice() ? a.lattice().get() : b.lattice().get();
    static const RelationLattice trivial = RelationLattice::empty({"p"});
    return point_eq(a.value(), b.value(), lat ? *lat : trivial);
}

}  // namespace ehq
