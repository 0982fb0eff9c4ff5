#include "ehq/monomial.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ehq {

Monomial Monomial::gen(const std::string& name, const Rational& e) {
    Monomial m;
    if (e != 0) m.exps_[name] = e;
    return m;
}

Monomial Monomial::root_of_unity(const Rational& angle) {
    Monomial m;
    m.torsion_ = rat_frac(angle);
    return m;
}

void Monomial::normalize() {
    torsion_ = rat_frac(torsion_);
    for (auto it = exps_.begin(); it != exps_.end();) {
        if (it->second == 0) it = exps_.erase(it);
        else ++it;
    }
}

Rational Monomial::exponent(const std::string& name) const {
    auto it = exps_.find(name);
    return it == exps_.end() ? Rational(0) : it->second;
}

Monomial Monomial::inverse() const {
    Monomial m;
    m.torsion_ = rat_frac(-torsion_);
    for (auto& [g, e] : exps_) m.exps_[g] = -e;
    return m;
}

Monomial Monomial::pow(const Rational& r) const {
    Monomial m;
    m.torsion_ = rat_frac(torsion_ * r);
    if (r != 0)
        for (auto& [g, e] : exps_) m.exps_[g] = e * r;
    return m;
}

Monomial& Monomial::operator*=(const Monomial& o) {
    torsion_ = rat_frac(torsion_ + o.torsion_);
    for (auto& [g, e] : o.exps_) {
        auto [it, inserted] = exps_.emplace(g, e);
        if (!inserted) {
            it->second += e;
            if (it->second == 0) exps_.erase(it);
        }
    }
    return *this;
}

Monomial Monomial::coarse(const std::string& p_name) const {
    Monomial m = *this;
    m.torsion_ = 0;
    m.exps_.erase(p_name);
    return m;
}

Monomial Monomial::reduce_p(const std::string& p_name) const {
    Monomial m = *this;
    auto it = m.exps_.find(p_name);
    if (it != m.exps_.end()) {
        it->second = rat_frac(it->second);
        if (it->second == 0) m.exps_.erase(it);
    }
    return m;
}

namespace {
std::strong_ordering cmp(const Rational& a, const Rational& b) {
    if (a < b) return std::strong_ordering::less;
    if (b < a) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}
}  // namespace

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
    if (auto c = cmp(torsion_, o.torsion_); c != 0) return c;
    auto it = exps_.begin();
    auto jt = o.exps_.begin();
    for (; it != exps_.end() && jt != o.exps_.end(); ++it, ++jt) {
        if (auto c = it->first <=> jt->first; c != 0) return c;
        if (auto c = cmp(it->second, jt->second); c != 0) return c;
    }
    if (it != exps_.end()) return std::strong_ordering::greater;
    if (jt != o.exps_.end()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

std::vector<std::string> Monomial::support() const {
    std::vector<std::string> out;
    out.reserve(exps_.size());
    for (auto& [g, e] : exps_) out.push_back(g);
    return out;
}

std::string Monomial::str() const {
    std::ostringstream os;
    bool first = true;
    if (torsion_ != 0) {
        if (torsion_ == Rational(1, 2)) os << "-1";
        else os << "zeta(" << rat_string(torsion_) << ")";
        first = false;
    }
    for (auto& [g, e] : exps_) {
        if (!first) os << "*";
        os << g;
        if (e != 1) os << "^" << rat_string(e);
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

std::complex<double> Monomial::eval(
    const std::map<std::string, std::complex<double>>& values) const {
    std::complex<double> log_sum = 0.0;
    for (auto& [g, e] : exps_) {
        auto it = values.find(g);
        if (it == values.end()) throw Error("no numeric value for generator '" + g + "'");
        log_sum += rat_double(e) * std::log(it->second);
    }
    double angle = 2.0 * std::numbers::pi * rat_double(torsion_);
    return std::exp(log_sum + std::complex<double>(0.0, angle));
}

}  // namespace ehq
