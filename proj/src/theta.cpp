#include "ehq/theta.hpp"

#include <sstream>

#include "ehq/errors.hpp"

namespace ehq {

ThetaQuotient ThetaQuotient::constant(int level, Monomial c) {
    ThetaQuotient f(level);
    f.constant_ = std::move(c);
    return f;
}

ThetaQuotient ThetaQuotient::z_pow(int level, Int n) {
    ThetaQuotient f(level);
    f.z_power_ = std::move(n);
    return f;
}

ThetaQuotient ThetaQuotient::theta(int level, Monomial shift, int arg_power, int exponent) {
    ThetaQuotient f(level);
    f.add_factor(std::move(shift), arg_power, exponent);
    return f;
}

void ThetaQuotient::add_factor(Monomial shift, int arg_power, int exponent) {
    if (exponent == 0) return;
    if (arg_power == 0)
        throw Error("theta factor with constant argument is not representable exactly");
    if (arg_power < 0) {
        // theta(xi z^{-m}) = -xi z^{-m} theta(xi^{-1} z^m)
        constant_ *= (Monomial::root_of_unity(Rational(1, 2)) * shift).pow(exponent);
        z_power_ += Int(arg_power) * exponent;
        shift = shift.inverse();
        arg_power = -arg_power;
    }
    // theta(p^f x) = (-1)^f x^{-f} p^{-f(f-1)/2} theta(x), with f the integer
    // part of the shift's p-exponent.
    Rational e = shift.exponent("p");
    Int f = rat_floor(e);
    if (f != 0) {
        Monomial xi0 = shift * Monomial::gen("p", -Rational(f));
        Monomial unit = Monomial::root_of_unity(Rational(f, 2)) * xi0.pow(-Rational(f)) *
                        Monomial::gen("p", -Rational(f * (f - 1)) / 2);
        constant_ *= unit.pow(exponent);
        z_power_ += -f * arg_power * exponent;
        shift = std::move(xi0);
    }
    ThetaArg key{std::move(shift), arg_power};
    auto [it, inserted] = factors_.emplace(std::move(key), exponent);
    if (!inserted) {
        it->second += exponent;
        if (it->second == 0) factors_.erase(it);
    }
}

ThetaQuotient ThetaQuotient::inverse() const {
    ThetaQuotient out(level_);
    out.constant_ = constant_.inverse();
    out.z_power_ = -z_power_;
    for (auto& [arg, n] : factors_) out.factors_.emplace(arg, -n);
    return out;
}

ThetaQuotient& ThetaQuotient::operator*=(const ThetaQuotient& o) {
    if (level_ != o.level_)
        throw LevelMismatchError("theta quotient product across levels " +
                                 std::to_string(level_) + " vs " + std::to_string(o.level_));
    constant_ *= o.constant_;
    z_power_ += o.z_power_;
    for (auto& [arg, n] : o.factors_) add_factor(arg.shift, arg.power, n);
    return *this;
}

ThetaQuotient ThetaQuotient::sigma(int direction) const {
    ThetaQuotient out(level_);
    out.constant_ = constant_ * Monomial::gen("q", Rational(direction * z_power_, level_));
    out.z_power_ = z_power_;
    for (auto& [arg, n] : factors_)
        out.add_factor(arg.shift * Monomial::gen("q", Rational(direction * arg.power, level_)),
                       arg.power, n);
    return out;
}

ThetaQuotient ThetaQuotient::lift(int k) const {
    if (level_ != 1) throw LevelMismatchError("lift expects a level-1 quotient");
    ThetaQuotient out(k);
    out.constant_ = constant_;
    out.z_power_ = z_power_ * k;
    for (auto& [arg, n] : factors_) out.add_factor(arg.shift, arg.power * k, n);
    return out;
}

Divisor ThetaQuotient::divisor(std::shared_ptr<const RelationLattice> lattice) const {
    Divisor d(level_, std::move(lattice));
    for (auto& [arg, n] : factors_) {
        const int m = arg.power;
        Monomial root = arg.shift.inverse().pow(Rational(1, m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                d.add(root * Monomial::root_of_unity(Rational(i, m)) *
                          Monomial::gen("p", Rational(j, m)),
                      n);
    }
    return d;
}

std::string ThetaQuotient::str() const {
    std::ostringstream os;
    os << constant_.str();
    if (z_power_ != 0) os << "*z" << level_ << "^" << z_power_.str();
    for (auto& [arg, n] : factors_) {
        os << "*theta(" << arg.shift.str();
        if (arg.power != 1) os << "*z" << level_ << "^" << arg.power;
        else os << "*z" << level_;
        os << ")";
        if (n != 1) os << "^" << n;
    }
    return os.str();
}

HypergeometricData build_hypergeometric(const std::vector<Monomial>& eps,
                                        const RelationLattice& lattice) {
    if (eps.size() != 8) throw ConfigError("expected exactly 8 epsilon parameters");
    Monomial prod_eps;
    for (auto& e : eps) prod_eps *= e;
    Monomial balance = prod_eps * Monomial::gen("p", -2) * Monomial::gen("q", -2);
    if (!lattice.contains(balance))
        throw BalancingError("not elliptic: A(pz) != A(z) (balancing prod eps_j = p^2 q^2 "
                             "does not hold in the lattice)");

    HypergeometricData out;

    // b = (prod eps) q^-5 z^-4 theta(q^3 z^2) prod theta(eps_j^-1 q z)
    //     / (theta(q z^2) prod theta(eps_j q z)),  at level 1.
    ThetaQuotient b = ThetaQuotient::constant(1, prod_eps * Monomial::gen("q", -5));
    b *= ThetaQuotient::z_pow(1, -4);
    b *= ThetaQuotient::theta(1, Monomial::gen("q", 3), 2, 1);
    b *= ThetaQuotient::theta(1, Monomial::gen("q", 1), 2, -1);
    for (auto& e : eps) {
        b *= ThetaQuotient::theta(1, e.inverse() * Monomial::gen("q"), 1, 1);
        b *= ThetaQuotient::theta(1, e * Monomial::gen("q"), 1, -1);
    }
    out.b = b;

    // sigma^-1(b) lifted to level 2 equals p2/p3 with
    //   p2 = (prod eps) q^-1 theta(q z2^4) prod theta(eps_j^-1 z2^2)
    //   p3 = z2^8 theta(q^-1 z2^4) prod theta(eps_j z2^2).
    ThetaQuotient p2 = ThetaQuotient::constant(2, prod_eps * Monomial::gen("q", -1));
    p2 *= ThetaQuotient::theta(2, Monomial::gen("q"), 4, 1);
    ThetaQuotient p3 = ThetaQuotient::z_pow(2, 8);
    p3 *= ThetaQuotient::theta(2, Monomial::gen("q", -1), 4, 1);
    for (auto& e : eps) {
        p2 *= ThetaQuotient::theta(2, e.inverse(), 2, 1);
        p3 *= ThetaQuotient::theta(2, e, 2, 1);
    }
    out.p2 = p2;
    out.p3 = p3;

    for (int j = 0; j < 6; ++j)
        out.nu_factors.push_back(eps[static_cast<std::size_t>(j)] * eps[7] *
                                 Monomial::gen("q", -1));
    out.a_num_shifts = eps;
    out.a_den_args = {ThetaArg{Monomial(), 2}, ThetaArg{Monomial::gen("q"), 2}};
    return out;
}

}  // namespace ehq
