#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ehq/monomial.hpp"
#include "ehq/rational.hpp"

namespace ehq {

using IVec = std::vector<Int>;
using IMat = std::vector<IVec>;
using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;

/// Canonical row Hermite normal form: positive pivots, entries above each
/// pivot reduced into [0, pivot), zero rows dropped.  Two integer lattices are
/// equal iff their HNF bases are equal row for row.
IMat hnf_rows(IMat rows);

/// Saturated integer left kernel {v : v*C = 0}, returned in HNF.
IMat integer_kernel(const IMat& C);

/// Basis (as columns) of the rational right kernel {x : M*x = 0}.
QMat rational_right_kernel(const QMat& M);

/// Solution set of a rational linear system, projected onto a prefix of the
/// unknowns.
struct AffineSet {
    QVec particular;  // tracked coordinates of one solution
    QMat dirs;        // tracked coordinates of a nullspace basis
};

/// Is there a point of the affine set with every tracked coordinate an
/// integer (and coordinate `nonzero_idx`, if >= 0, nonzero)?  Returns a
/// witness.  Supports up to two tracked coordinates, which covers every use
/// in this project (p-exponent, and (q,p)-exponent pairs).
std::optional<std::vector<Int>> affine_integer_point(const AffineSet& s, int nonzero_idx = -1);

/// Two tracked coordinates: integer point (x, y) with x >= 0 and x minimal,
/// if one exists.
std::optional<std::pair<Int, Int>> affine_integer_point_min_nonneg(const AffineSet& s);

/// One particular rational solution x of A x = rhs, or nullopt.
std::optional<QVec> solve_rational(const QMat& A, const QVec& rhs);

/// An integer lattice of exponent relations among named generators: each
/// basis row r declares prod_g g^{r_g} = 1.  Membership tests work in the
/// divisible hull (rational combinations of the basis), mirroring the
/// take-powers arguments the exact criteria rely on.
class RelationLattice {
public:
    RelationLattice() = default;

    static RelationLattice empty(std::vector<std::string> gens);
    static RelationLattice from_rows(std::vector<std::string> gens, IMat rows);

    const std::vector<std::string>& gens() const { return gens_; }
    const IMat& basis() const { return basis_; }
    bool operator==(const RelationLattice&) const = default;

    /// exps(m) = sum_{g tracked} x_g e_g + Q-span(basis), solved over Q and
    /// projected to the tracked coordinates (in the given order).  nullopt if
    /// m carries torsion or no rational solution exists.  Generators of m not
    /// known to the lattice are treated as free.
    std::optional<AffineSet> tracked_solve(const Monomial& m,
                                           const std::vector<std::string>& tracked) const;

    /// Rational exponents (a_g) with m == prod g^{a_g} modulo the lattice, or
    /// nullopt.  Unique (hence canonical) whenever the quotient of the
    /// generator group by the lattice is free on the complement of the
    /// subgroup.
    std::optional<std::map<std::string, Rational>> member_with_exponents(
        const Monomial& m, const std::vector<std::string>& subgroup) const;

    /// m == 1 modulo the lattice (divisible hull; torsion must vanish).
    bool contains(const Monomial& m) const;

private:
    std::vector<std::string> gens_;
    IMat basis_;  // HNF
};

/// Relations among source generators induced by a substitution source ->
/// monomials in target generators, together with a target lattice: the
/// saturated integer lattice {v : prod_s s^{v_s} maps into the divisible hull
/// of `target`}.
RelationLattice kernel_lattice(const std::vector<std::string>& source_gens,
                               const QMat& matrix,  // row per source gen, column per target gen
                               const std::vector<std::string>& target_gens,
                               const RelationLattice& target);

}  // namespace ehq
