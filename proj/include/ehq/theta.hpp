#pragma once

#include <compare>
#include <map>
#include <memory>
#include <vector>

#include "ehq/divisor.hpp"
#include "ehq/monomial.hpp"

namespace ehq {

/// The argument theta(shift * z_k^power ; p) of one theta factor.  power >= 1
/// after normalization; power 2 and 4 encode the z^2-arguments of the
/// hypergeometric coefficients at levels 1 and 2.
struct ThetaArg {
    Monomial shift;
    int power = 1;
    auto operator<=>(const ThetaArg&) const = default;
};

/// An element of Q_k: constant * z_k^{z_power} * prod theta(shift*z_k^m; p)^n.
/// The constant is an exact Monomial in the parameter group; the z-power
/// tracks the units produced by the relation theta(p*x) = -x^{-1} theta(x).
/// Normal form: every shift has p-exponent in [0,1) and every power is >= 1;
/// two quotients equal as functions have identical normal forms under a
/// generic lattice.
class ThetaQuotient {
public:
    explicit ThetaQuotient(int level = 1) : level_(level) {}

    static ThetaQuotient constant(int level, Monomial c);
    static ThetaQuotient z_pow(int level, Int n);
    static ThetaQuotient theta(int level, Monomial shift, int arg_power = 1, int exponent = 1);

    int level() const { return level_; }
    const Monomial& constant_part() const { return constant_; }
    const Int& z_power() const { return z_power_; }
    const std::map<ThetaArg, int>& factors() const { return factors_; }

    ThetaQuotient inverse() const;
    ThetaQuotient& operator*=(const ThetaQuotient& o);
    friend ThetaQuotient operator*(ThetaQuotient a, const ThetaQuotient& b) { a *= b; return a; }
    friend ThetaQuotient operator/(ThetaQuotient a, const ThetaQuotient& b) {
        a *= b.inverse();
        return a;
    }
    bool operator==(const ThetaQuotient&) const = default;

    /// sigma^{direction}: z_k -> q_k^{direction} z_k.
    ThetaQuotient sigma(int direction) const;

    /// Reinterpret a level-1 quotient on the k-fold cover (z = z_k^k).
    ThetaQuotient lift(int k) const;

    /// Divisor on C*_k/p^Z: theta(xi*z_k^m)^n contributes the m^2 classes
    /// [zeta_m^i xi^{-1/m} p^{j/m}] with multiplicity n.
    Divisor divisor(std::shared_ptr<const RelationLattice> lattice) const;

    std::string str() const;

private:
    int level_ = 1;
    Monomial constant_;
    Int z_power_ = 0;
    std::map<ThetaArg, int> factors_;

    // Apply theta-rel until every shift is canonical; folds units into
    // constant_ and z_power_.
    void add_factor(Monomial shift, int arg_power, int exponent);
};

/// Exact symbolic data of the elliptic hypergeometric equation
/// sigma^2(y) + a sigma(y) + b y = 0 with b = A(q^{-1}z^{-1})/A(qz):
/// b at level 1, and p2, p3 in Theta_2 realizing sigma^{-1}(b) = p2/p3 with
/// the divisors used by the Riccati analysis.  a's numerator (a sum of theta
/// products) is never represented symbolically.
struct HypergeometricData {
    ThetaQuotient b;                    // level 1
    ThetaQuotient p2;                   // level 2
    ThetaQuotient p3;                   // level 2
    std::vector<Monomial> nu_factors;   // the six arguments eps_j*eps_8/q of nu
    std::vector<Monomial> a_num_shifts; // shifts of prod theta(eps_j z) in A(z)
    std::vector<ThetaArg> a_den_args;   // theta(z^2), theta(q z^2)
};

/// Requires the balancing relation prod eps_j = p^2 q^2 in the lattice.
HypergeometricData build_hypergeometric(const std::vector<Monomial>& eps,
                                        const RelationLattice& lattice);

}  // namespace ehq
