#pragma once

#include <compare>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "ehq/rational.hpp"

namespace ehq {

/// An exact multiplicative word in named generators with rational exponents,
/// together with a root-of-unity factor e^{2*pi*i*torsion} tracked as an exact
/// rational angle in [0,1).  The free part and the torsion part never mix.
class Monomial {
public:
    Monomial() = default;

    static Monomial gen(const std::string& name, const Rational& e = Rational(1));
    static Monomial root_of_unity(const Rational& angle);

    const Rational& torsion() const { return torsion_; }
    Rational exponent(const std::string& name) const;
    const std::map<std::string, Rational>& exponents() const { return exps_; }

    bool is_identity() const { return torsion_ == 0 && exps_.empty(); }
    bool is_torsion_free() const { return torsion_ == 0; }

    Monomial inverse() const;
    Monomial pow(const Rational& r) const;

    Monomial& operator*=(const Monomial& o);
    friend Monomial operator*(Monomial a, const Monomial& b) { a *= b; return a; }
    friend Monomial operator/(Monomial a, const Monomial& b) { a *= b.inverse(); return a; }

    /// Copy with the torsion and the p-exponent dropped (the coarsening used
    /// by the Riccati weight bookkeeping).
    Monomial coarse(const std::string& p_name = "p") const;
    /// Copy with the p-exponent reduced modulo 1 (canonical representative of
    /// a class mod p^Z, up to lattice relations).
    Monomial reduce_p(const std::string& p_name = "p") const;

    std::vector<std::string> support() const;

    std::strong_ordering operator<=>(const Monomial& o) const;
    bool operator==(const Monomial&) const = default;

    std::string str() const;

    /// Numeric evaluation under an assignment of complex values to the
    /// generators; rational powers use the principal branch of each
    /// generator's logarithm, so evaluation is an exact homomorphism on
    /// exponents.
    std::complex<double> eval(const std::map<std::string, std::complex<double>>& values) const;

private:
    Rational torsion_;                      // in [0,1)
    std::map<std::string, Rational> exps_;  // no zero entries
    void normalize();
};

}  // namespace ehq
