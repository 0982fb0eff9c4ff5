#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "ehq/theta.hpp"

namespace ehq {

using Complex = std::complex<double>;

/// Numeric instance of the hypergeometric parameters.
struct NumericParams {
    Complex p;
    Complex q;
    std::array<Complex, 8> eps;
    int trunc = 60;    // truncation order N of all infinite products
    int nodes = 1024;  // quadrature nodes M on the unit circle

    /// |prod eps_j - p^2 q^2|, zero under exact case-(A) balancing.
    double balancing_residual() const;
    /// Epsilons adjusted so the balancing holds to machine precision:
    /// eps_8 is solved from the others.
    NumericParams balanced() const;
};

/// theta(z;p) = (z;p)_inf (p/z;p)_inf truncated at N factors per product.
/// If tail is non-null it receives an absolute bound on the truncation error.
Complex theta_eval(Complex z, Complex p, int N, double* tail = nullptr);

/// (z;p,q)_inf, double product truncated at N x N (with early break).
Complex pochhammer2_eval(Complex z, Complex p, Complex q, int N);

/// Gamma(z;p,q) = (pq/z;p,q)_inf / (z;p,q)_inf.  Throws PoleError when a
/// denominator factor vanishes to working precision.
Complex elliptic_gamma_eval(Complex z, Complex p, Complex q, int N);

/// A(z) = prod_j theta(eps_j z;p) / (theta(z^2;p) theta(q z^2;p)).
Complex A_eval(Complex z, const NumericParams& par);

/// nu = prod_{j<=6} theta(eps_j eps_8 / q; p).
Complex nu_eval(const NumericParams& par);

/// a(z) and b(z) of sigma^2(y) + a sigma(y) + b y = 0.
Complex a_eval(Complex z, const NumericParams& par);
Complex b_eval(Complex z, const NumericParams& par);

struct QuadratureResult {
    Complex value;
    double error_estimate;  // |V_M - V_{M/2}|, the node-halving estimate
};

/// V(t_1..t_8;p,q): trapezoid rule with M nodes on the unit circle applied to
/// kappa * integral of prod_j Gamma(t_j z)Gamma(t_j/z) / (Gamma(z^2)Gamma(z^-2)) dz/z,
/// kappa = (p;p)(q;q)/(4 pi i).  Throws PoleError when the integrand pole grid
/// {t_j p^a q^b, sqrt(p^{a+1} q^{b+1})} comes within 1e-6 of the contour.
QuadratureResult v_integral_eval(const std::array<Complex, 8>& t, Complex p, Complex q,
                                 int M, int N);

/// f_eps(z) per the defining V-to-Gamma ratio; the V arguments are recovered
/// from the epsilons by t_j = q/(c eps_j) (j<=5), t_6 = cz, t_7 = c/z,
/// t_8 = c/eps_8 with c = sqrt(eps_6 eps_8)/p^2, and the Gamma denominator is
/// G(c^2 z/eps_8) G(eps_8 z) G(c^2/(z eps_8)) G(eps_8/z).  Throws WindowError
/// when some |t_j| leaves the convergence window.
QuadratureResult f_eval(const NumericParams& par, Complex z);

using ComplexFn = std::function<Complex(Complex)>;

/// max over samples of |A(z)(y(qz)-y(z)) + A(1/z)(y(z/q)-y(z)) + nu y(z)|
/// normalized by the sum of term magnitudes.
double hypergeo_residual(const ComplexFn& y, const NumericParams& par,
                         const std::vector<Complex>& z_samples);

/// max over samples of |u(z)u(qz) + a(z)u(z) + b(z)| normalized by the sum of
/// term magnitudes.
double riccati_residual(const ComplexFn& u, const ComplexFn& a, const ComplexFn& b,
                        Complex q, const std::vector<Complex>& z_samples);

/// Numeric value of a symbolic theta quotient at z_k = z: the constant times
/// z^{z_power} times the theta factors evaluated with theta_eval.  `values`
/// assigns complex numbers to the parameter generators (p, q, eps...).
Complex tq_eval(const ThetaQuotient& f,
                const std::map<std::string, Complex>& values, Complex z, int N);

}  // namespace ehq
