#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ehq/divisor.hpp"
#include "ehq/theta.hpp"

namespace ehq {

enum class BalancingCase { A, B };

/// Canonical generator order for the parameter group: p, q, e1..e8.
const std::vector<std::string>& param_gens();
/// The eight epsilon generators as monomials e1..e8.
std::vector<Monomial> param_epsilons();

/// Case (A): prod eps_j = p^2 q^2.
/// Case (B): (prod_{j<=6} eps_j) eps_7^2 = p^2 q together with eps_8 = eps_7 q.
RelationLattice case_lattice(BalancingCase c);

/// One solution shape u = sigma(r0)/r0 * r1/r2 admitted by the structure
/// theorem: the chosen sub-divisors of div2(p2) and div2(sigma^-1(p3)),
/// together with the bookkeeping counts of the irreducibility argument.
/// alpha[j] counts r1-support points over +-sqrt(eps_j), +-sqrt(p eps_j);
/// alpha_prime[j] counts r2-support points over +-sqrt(q/eps_j),
/// +-sqrt(qp/eps_j); gamma counts the quarter-root-of-q points of r1 and r2
/// combined; m is the integer p-exponent of the weight class.
struct RiccatiCandidate {
    std::map<Monomial, Int> r1_counts;
    std::map<Monomial, Int> r2_counts;
    std::array<Int, 8> alpha{};
    std::array<Int, 8> alpha_prime{};
    Int gamma{0};
    Int deg_r1{0};
    Int deg_r2{0};
    Int deg_r0{0};
    Int m{0};

    bool is_zero() const { return r1_counts.empty() && r2_counts.empty(); }
    bool operator==(const RiccatiCandidate&) const = default;
    std::string str() const;
};

/// Deterministic report order: lexicographic in
/// (deg_r1, alpha, alpha_prime, gamma, r1_counts, r2_counts).
bool candidate_less(const RiccatiCandidate& a, const RiccatiCandidate& b);

/// Count-level search for the generic case-(A)/(B) lattices: groups support
/// points by their coarse class (torsion and p-part dropped), prunes count
/// vectors with the induced-relation functionals and the deg2(r0) >= 0 bound,
/// then tests condition (iv) exactly on the surviving point selections.
/// Requires multiplicity-1 support and the exact case lattice.
std::vector<RiccatiCandidate> riccati_constraint_search(const Divisor& p2_div,
                                                        const Divisor& sigma_inv_p3_div,
                                                        const RelationLattice& lattice,
                                                        BalancingCase c);

/// Exhaustive enumeration of sub-divisor pairs satisfying (i)-(iv) for an
/// arbitrary lattice and arbitrary effective divisors, with the same
/// branch-and-bound core but none of the case-specific preconditions.
/// budget bounds the degree of each input divisor; exceeding it throws
/// BudgetExceededError.  Overload taking the symbolic
/// p2/p3 extracts their divisors first.
std::vector<RiccatiCandidate> general_riccati_enumerator(const Divisor& p2_div,
                                                         const Divisor& sigma_inv_p3_div,
                                                         const RelationLattice& lattice,
                                                         const Int& budget);
std::vector<RiccatiCandidate> general_riccati_enumerator(
    const ThetaQuotient& p2, const ThetaQuotient& p3,
    const std::shared_ptr<const RelationLattice>& lattice, const Int& budget);

/// nu != 0 under the lattice: no eps_j*eps_8/q lies in p^Z, so constant
/// Riccati solutions v are impossible.
bool constant_solution_eliminated(const std::vector<Monomial>& nu_factors,
                                  const RelationLattice& lattice);

struct Collision {
    Monomial omega;
    Monomial omega_prime;
    Int ell;  // omega_prime = omega * q_k^ell mod p^Z mod lattice, ell != 0
};

struct TelescoperResult {
    bool obstructed = false;
    // Every support point with a nonzero q_k-power partner, as ordered pairs.
    std::vector<Collision> collisions;
    // A support point whose whole q_k-orbit misses the support (the witness
    // that no telescoper exists), when obstructed.
    std::optional<Monomial> witness;
};

/// Theorem-3 style obstruction for b at level k: a telescoper would force
/// every zero/pole class of b to have a q_k^ell partner (ell in Z, ell != 0)
/// among the zero/pole classes; obstructed = some class has none.
TelescoperResult telescoper_obstruction(const ThetaQuotient& b, const RelationLattice& lattice);

enum class ReasonKind {
    riccati_candidate,
    constant_solution_possible,
    telescoper_orbit_collision,
    nu_zero,
    non_generic_lattice,
    empty_divisor_b,
};
const char* reason_name(ReasonKind k);

struct Reason {
    ReasonKind kind;
    std::string detail;
    std::optional<RiccatiCandidate> candidate;
    std::optional<Collision> collision;
};

enum class Outcome { Transcendental, Inconclusive };

struct Verdict {
    Outcome outcome = Outcome::Inconclusive;
    std::vector<Reason> reasons;  // empty iff Transcendental
};

/// Runs both criteria on the elliptic hypergeometric equation for the given
/// epsilons and lattice.  b_override replaces the telescoper input (used to
/// analyze a hand-supplied coefficient b).  Only ever certifies
/// transcendence; any failed criterion yields Inconclusive with reasons.
Verdict transcendence_verdict(const std::vector<Monomial>& eps, BalancingCase c,
                              const RelationLattice& lattice,
                              const std::optional<ThetaQuotient>& b_override = std::nullopt);

}  // namespace ehq
