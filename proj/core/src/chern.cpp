#include "thomstem/chern.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "thomstem/errors.hpp"

namespace thomstem::chern {

namespace {

void check_rank(int rank) {
    if (rank < 0 || rank > ext::kMaxRank)
        throw InvalidArgument(fmt::format("torus rank {} outside [0, {}]", rank, ext::kMaxRank));
}

void check_in_rank(Monomial m, int rank) {
    if (m.top_generator() > rank)
        throw InvalidArgument(fmt::format("{} uses a generator beyond rank {}", ext::to_string(m), rank));
}

}  // namespace

Integer ManifoldData::quadruple_product(Monomial subset) const {
    auto it = quad_form.find(subset);
    return it == quad_form.end() ? Integer{0} : it->second;
}

ManifoldData make_manifold(int b1, std::map<Monomial, Integer> quad_form, int signature, int b_plus,
                           std::string label) {
    check_rank(b1);
    if (b_plus < 0) throw InvalidArgument("b_plus must be nonnegative");
    ManifoldData m;
    m.b1 = b1;
    m.signature = signature;
    m.b_plus = b_plus;
    m.label = std::move(label);
    for (auto& [subset, value] : quad_form) {
        if (subset.degree() != 4)
            throw InvalidArgument(fmt::format("quadruple form key {} is not a 4-subset", ext::to_string(subset)));
        check_in_rank(subset, b1);
        if (value != 0) m.quad_form.emplace(subset, std::move(value));
    }
    return m;
}

ManifoldData make_homology_torus(const Integer& determinant) {
    if (determinant == 0) throw InvalidArgument("homology torus determinant must be nonzero");
    return make_manifold(4, {{Monomial::of({1, 2, 3, 4}), determinant}}, 0, 3,
                         fmt::format("T4(det={})", determinant.str()));
}

ManifoldData connected_sum(const ManifoldData& m1, const ManifoldData& m2) {
    std::map<Monomial, Integer> form = m1.quad_form;
    for (const auto& [subset, value] : m2.quad_form) form.emplace(subset.shifted(m1.b1), value);
    return make_manifold(m1.b1 + m2.b1, std::move(form), m1.signature + m2.signature, m1.b_plus + m2.b_plus,
                         fmt::format("{} # {}", m1.label, m2.label));
}

BigradedClass::BigradedClass(int rank, Terms terms) : rank_(rank) {
    check_rank(rank);
    for (auto& [key, c] : terms) {
        check_in_rank(key.first, rank);
        check_in_rank(key.second, rank);
        if (c != 0 && key.first.degree() <= kMaxBaseDegree) terms_.emplace(key, std::move(c));
    }
}

BigradedClass BigradedClass::unit(int rank) { return BigradedClass(rank, Terms{{{Monomial{}, Monomial{}}, 1}}); }

BigradedClass BigradedClass::curvature(int rank) {
    Terms terms;
    for (int k = 1; k <= rank; ++k) terms.emplace(Key{Monomial::generator(k), Monomial::generator(k)}, 1);
    return BigradedClass(rank, std::move(terms));
}

Rational BigradedClass::coefficient(Monomial base, Monomial picard) const {
    auto it = terms_.find({base, picard});
    return it == terms_.end() ? Rational{0} : it->second;
}

BigradedClass add(const BigradedClass& a, const BigradedClass& b) {
    if (a.rank() != b.rank()) throw RankMismatch("bigraded rank mismatch");
    BigradedClass::Terms terms = a.terms();
    for (const auto& [key, c] : b.terms()) terms[key] += c;
    return BigradedClass(a.rank(), std::move(terms));
}

BigradedClass scale(const Rational& q, const BigradedClass& a) {
    BigradedClass::Terms terms;
    for (const auto& [key, c] : a.terms()) terms.emplace(key, q * c);
    return BigradedClass(a.rank(), std::move(terms));
}

BigradedClass multiply(const BigradedClass& a, const BigradedClass& b) {
    if (a.rank() != b.rank()) throw RankMismatch("bigraded rank mismatch");
    BigradedClass::Terms terms;
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            const auto& [sa, ta] = ka;
            const auto& [sb, tb] = kb;
            if (sa.degree() + sb.degree() > BigradedClass::kMaxBaseDegree) continue;
            // x_sa dt_ta x_sb dt_tb = (-1)^{|ta||sb|} x_sa x_sb dt_ta dt_tb
            int sign = ext::merge_sign(sa, sb) * ext::merge_sign(ta, tb);
            if (sign == 0) continue;
            if ((ta.degree() * sb.degree()) % 2 != 0) sign = -sign;
            terms[{sa | sb, ta | tb}] += Rational(sign) * ca * cb;
        }
    }
    return BigradedClass(a.rank(), std::move(terms));
}

BigradedClass exp_curvature(int rank) {
    const BigradedClass omega = BigradedClass::curvature(rank);
    BigradedClass sum = BigradedClass::unit(rank);
    BigradedClass power = BigradedClass::unit(rank);
    Integer factorial = 1;
    for (int k = 1; k <= BigradedClass::kMaxBaseDegree; ++k) {
        power = multiply(power, omega);
        factorial *= k;
        sum = add(sum, scale(Rational(Integer{1}, factorial), power));
    }
    return sum;
}

std::vector<ExteriorClass> integrate_over_base(const BigradedClass& form, const ManifoldData& m) {
    if (form.rank() != m.b1) throw RankMismatch("form and manifold disagree on b1");
    std::map<Monomial, Rational> picard;
    for (const auto& [key, c] : form.terms()) {
        const auto& [base, dt] = key;
        if (base.degree() != BigradedClass::kMaxBaseDegree) continue;
        const Integer q = m.quadruple_product(base);
        if (q != 0) picard[dt] += c * Rational(q);
    }
    std::vector<ExteriorClass> out(3, ExteriorClass(m.b1));
    std::vector<ExteriorClass::Terms> parts(3);
    for (const auto& [dt, c] : picard) {
        if (c == 0) continue;
        if (boost::multiprecision::denominator(c) != 1)
            throw std::logic_error(fmt::format("non-integral coefficient {} on {} after fiber integration",
                                               c.str(), ext::to_string(dt, "dt")));
        if (dt.degree() % 2 != 0 || dt.degree() > 4)
            throw std::logic_error("fiber integration produced an odd or oversized Picard degree");
        parts[static_cast<std::size_t>(dt.degree() / 2)].emplace(dt, boost::multiprecision::numerator(c));
    }
    for (std::size_t k = 0; k < parts.size(); ++k) out[k] = ExteriorClass(m.b1, std::move(parts[k]));
    return out;
}

std::vector<ExteriorClass> chern_character_index(const ManifoldData& m) {
    if (m.signature != 0)
        throw Unsupported(fmt::format("signature {} != 0: only A-hat = 1 inputs are supported", m.signature));
    return integrate_over_base(exp_curvature(m.b1), m);
}

std::string_view to_string(Field f) noexcept { return f == Field::quaternionic ? "quaternionic" : "real"; }

Mod2Class BundleData::stiefel_whitney(int i) const {
    if (i == 0) return Mod2Class::unit(base_rank);
    if (i < 0 || i > static_cast<int>(w.size())) return Mod2Class(base_rank);
    return w[static_cast<std::size_t>(i - 1)];
}

BundleData make_quaternionic_bundle(ExteriorClass c2, int rank, int sphere_shift) {
    if (rank < 1) throw InvalidArgument("quaternionic rank must be positive");
    if (c2.degree().value_or(4) != 4) throw InvalidArgument("c2 must be homogeneous of degree 4");
    BundleData f;
    f.base_rank = c2.rank();
    f.field = Field::quaternionic;
    f.rank = rank;
    f.c1 = ExteriorClass(f.base_rank);
    f.c2 = std::move(c2);
    const Mod2Class zero(f.base_rank);
    f.w = {zero, ext::mod2(f.c1), zero, ext::mod2(f.c2)};
    f.sphere_shift = sphere_shift;
    return f;
}

BundleData index_bundle(const ManifoldData& m) {
    const std::vector<ExteriorClass> ch = chern_character_index(m);
    if (!ch[1].is_zero()) throw std::logic_error("index bundle has nonzero c1 for a spin manifold");
    constexpr int kRank = 1;
    return make_quaternionic_bundle(-ch[2], kRank, kRank + m.signature / 4);
}

BundleData quotient_real_bundle(const BundleData& quaternionic) {
    if (quaternionic.field != Field::quaternionic || quaternionic.rank != 1)
        throw Unsupported("S(F)/S^1 is modeled only for rank-1 quaternionic bundles");
    BundleData g;
    g.base_rank = quaternionic.base_rank;
    g.field = Field::real;
    g.rank = 3;
    g.c1 = ExteriorClass(g.base_rank);
    g.c2 = ExteriorClass(g.base_rank);
    g.w.assign(3, Mod2Class(g.base_rank));
    g.sphere_shift = quaternionic.sphere_shift;
    return g;
}

}  // namespace thomstem::chern
