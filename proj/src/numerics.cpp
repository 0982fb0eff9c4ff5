#include "ehq/numerics.hpp"

#include <cmath>
#include <numbers>

#include "ehq/errors.hpp"

namespace ehq {

namespace {

constexpr double kEarlyBreak = 1e-19;  // factor deviation below double epsilon
constexpr double kPoleFactor = 1e-10;  // |1 - x| below this counts as a pole hit
constexpr double kContourGuard = 1e-6;

Complex prod_pow(Complex base, long e) {
    Complex r = 1.0;
    Complex b = e < 0 ? 1.0 / base : base;
    for (long i = 0; i < std::abs(e); ++i) r *= b;
    return r;
}

}  // namespace

double NumericParams::balancing_residual() const {
    Complex prod = 1.0;
    for (auto& e : eps) prod *= e;
    return std::abs(prod - p * p * q * q);
}

NumericParams NumericParams::balanced() const {
    NumericParams out = *this;
    Complex prod7 = 1.0;
    for (int j = 0; j < 7; ++j) prod7 *= eps[j];
    out.eps[7] = p * p * q * q / prod7;
    return out;
}

Complex theta_eval(Complex z, Complex p, int N, double* tail) {
    if (z == 0.0) throw Error("theta_eval: z = 0");
    Complex value = 1.0;
    Complex pi = 1.0;  // p^i
    const Complex zinv = 1.0 / z;
    for (int i = 0; i < N; ++i) {
        value *= (1.0 - pi * z) * (1.0 - p * pi * zinv);
        if (std::abs(pi) < kEarlyBreak) {
            pi *= p;
            break;
        }
        pi *= p;
    }
    if (tail) {
        // remaining factors differ from 1 by at most |p|^i|z| + |p|^{i+1}/|z|
        const double ap = std::abs(p);
        const double head = std::abs(pi) * (std::abs(z) + ap / std::abs(z));
        *tail = ap < 1.0 ? std::abs(value) * head / (1.0 - ap) : HUGE_VAL;
    }
    return value;
}

Complex pochhammer2_eval(Complex z, Complex p, Complex q, int N) {
    Complex value = 1.0;
    Complex pj = 1.0;
    for (int j = 0; j < N; ++j) {
        if (std::abs(pj * z) < kEarlyBreak) break;
        Complex x = pj * z;  // z p^j q^k
        for (int k = 0; k < N; ++k) {
            if (std::abs(x) < kEarlyBreak) break;
            value *= 1.0 - x;
            x *= q;
        }
        pj *= p;
    }
    return value;
}

Complex elliptic_gamma_eval(Complex z, Complex p, Complex q, int N) {
    if (z == 0.0) throw Error("elliptic_gamma_eval: z = 0");
    Complex num = 1.0, den = 1.0;
    Complex pj = 1.0;
    const Complex w = p * q / z;
    for (int j = 0; j < N; ++j) {
        Complex xd = pj * z;  // z p^j q^k
        Complex xn = pj * w;  // (pq/z) p^j q^k
        if (std::abs(xd) < kEarlyBreak && std::abs(xn) < kEarlyBreak) break;
        for (int k = 0; k < N; ++k) {
            if (std::abs(xd) < kEarlyBreak && std::abs(xn) < kEarlyBreak) break;
            if (std::abs(1.0 - xd) < kPoleFactor)
                throw PoleError("elliptic gamma pole: z on p^{-j} q^{-k}");
            den *= 1.0 - xd;
            num *= 1.0 - xn;
            xd *= q;
            xn *= q;
        }
        pj *= p;
    }
    return num / den;
}

Complex A_eval(Complex z, const NumericParams& par) {
    Complex num = 1.0;
    for (auto& e : par.eps) num *= theta_eval(e * z, par.p, par.trunc);
    Complex den = theta_eval(z * z, par.p, par.trunc) *
                  theta_eval(par.q * z * z, par.p, par.trunc);
    if (std::abs(den) < kPoleFactor)
        throw PoleError("A(z) pole: z^2 or qz^2 on p^Z");
    return num / den;
}

Complex nu_eval(const NumericParams& par) {
    Complex value = 1.0;
    for (int j = 0; j < 6; ++j)
        value *= theta_eval(par.eps[j] * par.eps[7] / par.q, par.p, par.trunc);
    return value;
}

Complex a_eval(Complex z, const NumericParams& par) {
    Complex Aq = A_eval(par.q * z, par);
    Complex Aqi = A_eval(1.0 / (par.q * z), par);
    return (nu_eval(par) - Aq - Aqi) / Aq;
}

Complex b_eval(Complex z, const NumericParams& par) {
    return A_eval(1.0 / (par.q * z), par) / A_eval(par.q * z, par);
}

QuadratureResult v_integral_eval(const std::array<Complex, 8>& t, Complex p, Complex q,
                                 int M, int N) {
    // Pole grid of the integrand: Gamma(t_j z^{+-1}) contributes poles of
    // modulus |t_j| |p^a q^b|^{+-1}; the Gamma(z^{+-2}) denominator
    // contributes zeros-turned-poles of modulus |p^{a+1} q^{b+1}|^{+-1/2}.
    // The nearest families to the contour are a = b = 0.
    for (auto& tj : t)
        if (std::abs(1.0 - std::abs(tj)) < kContourGuard)
            throw PoleError("V integrand pole within 1e-6 of the unit circle");
    if (std::abs(1.0 - std::sqrt(std::abs(p * q))) < kContourGuard)
        throw PoleError("V integrand pole within 1e-6 of the unit circle");

    // 1/Gamma(x) = (x;p,q)_inf / (pq/x;p,q)_inf, finite at the contour points
    // z = +-1 where Gamma(z^{+-2}) itself has a pole (the integrand vanishes
    // there).
    auto recip_gamma = [&](Complex x) {
        return pochhammer2_eval(x, p, q, N) / pochhammer2_eval(p * q / x, p, q, N);
    };
    auto integrand = [&](Complex z) {
        Complex num = 1.0;
        for (auto& tj : t)
            num *= elliptic_gamma_eval(tj * z, p, q, N) *
                   elliptic_gamma_eval(tj / z, p, q, N);
        return num * recip_gamma(z * z) * recip_gamma(1.0 / (z * z));
    };

    const Complex front =
        pochhammer2_eval(p, p, 0.0, N) * pochhammer2_eval(q, q, 0.0, N);
    Complex sum_all = 0.0, sum_even = 0.0;
    for (int k = 0; k < M; ++k) {
        const double ang = 2.0 * std::numbers::pi * k / M;
        Complex v = integrand(Complex(std::cos(ang), std::sin(ang)));
        sum_all += v;
        if (k % 2 == 0) sum_even += v;
    }
    QuadratureResult res;
    res.value = front * sum_all / (2.0 * M);
    const Complex coarse = front * sum_even / (2.0 * (M / 2));
    res.error_estimate = std::abs(res.value - coarse);
    return res;
}

QuadratureResult f_eval(const NumericParams& par, Complex z) {
    const Complex c = std::sqrt(par.eps[5] * par.eps[7]) / (par.p * par.p);
    std::array<Complex, 8> t;
    for (int j = 0; j < 5; ++j) t[j] = par.q / (c * par.eps[j]);
    t[5] = c * z;
    t[6] = c / z;
    t[7] = c / par.eps[7];
    for (auto& tj : t)
        if (std::abs(tj) >= 1.0 - kContourGuard)
            throw WindowError("f_eval: |t_j| leaves the convergence window");

    QuadratureResult v = v_integral_eval(t, par.p, par.q, par.nodes, par.trunc);
    const Complex e8 = par.eps[7];
    Complex den = elliptic_gamma_eval(c * c * z / e8, par.p, par.q, par.trunc) *
                  elliptic_gamma_eval(e8 * z, par.p, par.q, par.trunc) *
                  elliptic_gamma_eval(c * c / (z * e8), par.p, par.q, par.trunc) *
                  elliptic_gamma_eval(e8 / z, par.p, par.q, par.trunc);
    QuadratureResult res;
    res.value = v.value / den;
    res.error_estimate = v.error_estimate / std::abs(den);
    return res;
}

double hypergeo_residual(const ComplexFn& y, const NumericParams& par,
                         const std::vector<Complex>& z_samples) {
    double worst = 0.0;
    for (auto& z : z_samples) {
        const Complex yz = y(z);
        const Complex t1 = A_eval(z, par) * (y(par.q * z) - yz);
        const Complex t2 = A_eval(1.0 / z, par) * (y(z / par.q) - yz);
        const Complex t3 = nu_eval(par) * yz;
        const double denom =
            std::abs(t1) + std::abs(t2) + std::abs(t3) + 1e-300;
        worst = std::max(worst, std::abs(t1 + t2 + t3) / denom);
    }
    return worst;
}

double riccati_residual(const ComplexFn& u, const ComplexFn& a, const ComplexFn& b,
                        Complex q, const std::vector<Complex>& z_samples) {
    double worst = 0.0;
    for (auto& z : z_samples) {
        const Complex t1 = u(z) * u(q * z);
        const Complex t2 = a(z) * u(z);
        const Complex t3 = b(z);
        const double denom =
            std::abs(t1) + std::abs(t2) + std::abs(t3) + 1e-300;
        worst = std::max(worst, std::abs(t1 + t2 + t3) / denom);
    }
    return worst;
}

Complex tq_eval(const ThetaQuotient& f,
                const std::map<std::string, Complex>& values, Complex z, int N) {
    auto it = values.find("p");
    if (it == values.end()) throw Error("tq_eval: no value for p");
    const Complex p = it->second;
    Complex value = f.constant_part().eval(values) *
                    prod_pow(z, f.z_power().convert_to<long>());
    for (auto& [arg, n] : f.factors()) {
        Complex th =
            theta_eval(arg.shift.eval(values) * prod_pow(z, arg.power), p, N);
        value *= prod_pow(th, n);
    }
    return value;
}

}  // namespace ehq
