#include "ehq/divisor.hpp"

#include <sstream>

#include "ehq/errors.hpp"

namespace ehq {

namespace {
const RelationLattice& lattice_or_trivial(const std::shared_ptr<const RelationLattice>& p) {
    static const RelationLattice trivial = RelationLattice::empty({"p"});
    return p ? *p : trivial;
}
}  // namespace

void Divisor::add(const Monomial& point, const Int& mult) {
    if (mult == 0) return;
    Monomial key = point.reduce_p();
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        const RelationLattice& lat = lattice_or_trivial(lattice_);
        for (auto jt = terms_.begin(); jt != terms_.end(); ++jt) {
            if (point_eq(jt->first, key, lat)) { it = jt; break; }
        }
    }
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), mult);
    } else {
        it->second += mult;
        if (it->second == 0) terms_.erase(it);
    }
}

Int Divisor::multiplicity(const Monomial& point) const {
    Monomial key = point.reduce_p();
    auto it = terms_.find(key);
    if (it != terms_.end()) return it->second;
    const RelationLattice& lat = lattice_or_trivial(lattice_);
    for (auto& [k, n] : terms_)
        if (point_eq(k, key, lat)) return n;
    return 0;
}

Divisor& Divisor::operator+=(const Divisor& o) {
    if (!o.terms_.empty() && !terms_.empty() && level_ != o.level_)
        throw LevelMismatchError("div_add: levels " + std::to_string(level_) + " vs " +
                                 std::to_string(o.level_));
    if (terms_.empty()) { level_ = o.level_; if (!lattice_) lattice_ = o.lattice_; }
    for (auto& [pt, n] : o.terms_) add(pt, n);
    return *this;
}

Divisor Divisor::operator-() const {
    Divisor out(level_, lattice_);
    for (auto& [pt, n] : terms_) out.terms_.emplace(pt, -n);
    return out;
}

bool Divisor::operator==(const Divisor& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    if (!terms_.empty() && level_ != o.level_) return false;
    for (auto& [pt, n] : terms_)
        if (o.multiplicity(pt) != n) return false;
    return true;
}

Int Divisor::degree() const {
    Int s = 0;
    for (auto& [pt, n] : terms_) s += n;
    return s;
}

PointClass Divisor::weight() const {
    Monomial w;
    for (auto& [pt, n] : terms_) w *= pt.pow(Rational(n));
    return PointClass(level_, w, lattice_);
}

Divisor Divisor::sigma_translate(int direction) const {
    Monomial shift = Monomial::gen("q", Rational(-direction, level_));
    Divisor out(level_, lattice_);
    for (auto& [pt, n] : terms_) out.add(pt * shift, n);
    return out;
}

Divisor Divisor::pullback(int k) const {
    if (level_ != 1) throw LevelMismatchError("pullback: input divisor must be at level 1");
    Divisor out(k, lattice_);
    for (auto& [pt, n] : terms_) {
        Monomial root = pt.pow(Rational(1, k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                out.add(root * Monomial::root_of_unity(Rational(i, k)) *
                            Monomial::gen("p", Rational(j, k)),
                        n);
    }
    return out;
}

std::string Divisor::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [pt, n] : terms_) {
        if (!first) os << " + ";
        if (n != 1) os << n.str() << "*";
        os << "[" << pt.str() << "]";
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace ehq
