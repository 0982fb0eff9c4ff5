#pragma once

#include <memory>

#include "ehq/lattice.hpp"
#include "ehq/monomial.hpp"

namespace ehq {

/// A point of C*_k/p^Z, represented by an exact Monomial value together with
/// the relation lattice that decides equalities.  The stored representative
/// has its p-exponent reduced into [0,1) so that equal points usually compare
/// equal syntactically; point_eq decides the general case.
class PointClass {
public:
    PointClass(int level, Monomial value, std::shared_ptr<const RelationLattice> lattice)
        : level_(level), value_(value.reduce_p()), lattice_(std::move(lattice)) {}

    int level() const { return level_; }
    const Monomial& value() const { return value_; }
    const std::shared_ptr<const RelationLattice>& lattice() const { return lattice_; }

    std::string str() const { return value_.str(); }

private:
    int level_;
    Monomial value_;
    std::shared_ptr<const RelationLattice> lattice_;
};

/// a == b on C*_k/p^Z: the quotient of the representatives is p^n (integer n)
/// modulo the divisible hull of the lattice, with vanishing torsion quotient.
bool point_eq(const PointClass& a, const PointClass& b);

/// Same test on raw monomials under an explicit lattice.
bool point_eq(const Monomial& a, const Monomial& b, const RelationLattice& lattice);

}  // namespace ehq
