#include "thomstem/exterior.hpp"

#include <bit>
#include <utility>

#include <fmt/format.h>

#include "thomstem/errors.hpp"

namespace thomstem::ext {

namespace {

void check_rank(int rank) {
    if (rank < 0 || rank > kMaxRank)
        throw InvalidArgument(fmt::format("exterior algebra rank {} outside [0, {}]", rank, kMaxRank));
}

std::uint32_t rank_mask(int rank) {
    return rank == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << rank) - 1);
}

void check_fits(int rank, Monomial m) {
    if ((m.bits() & ~rank_mask(rank)) != 0)
        throw RankMismatch(fmt::format("monomial {} does not live in rank {}", to_string(m), rank));
}

void check_same_rank(int a, int b) {
    if (a != b) throw RankMismatch(fmt::format("exterior algebra rank mismatch: {} vs {}", a, b));
}

}  // namespace

Monomial Monomial::generator(int k) {
    if (k < 1 || k > kMaxRank) throw InvalidArgument(fmt::format("generator index {} out of range", k));
    return Monomial(std::uint32_t{1} << (k - 1));
}

Monomial Monomial::of(std::initializer_list<int> generators) {
    return of(std::vector<int>(generators));
}

Monomial Monomial::of(const std::vector<int>& generators) {
    std::uint32_t bits = 0;
    int previous = 0;
    for (int k : generators) {
        if (k <= previous) throw InvalidArgument("monomial generators must be strictly ascending and positive");
        bits |= generator(k).bits();
        previous = k;
    }
    return Monomial(bits);
}

Monomial Monomial::full(int rank) {
    check_rank(rank);
    return Monomial(rank_mask(rank));
}

int Monomial::degree() const noexcept { return std::popcount(bits_); }

bool Monomial::contains(int k) const noexcept {
    return k >= 1 && k <= kMaxRank && (bits_ >> (k - 1) & 1U) != 0;
}

int Monomial::top_generator() const noexcept { return bits_ == 0 ? 0 : std::bit_width(bits_); }

std::vector<int> Monomial::generators() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(degree()));
    for (std::uint32_t rest = bits_; rest != 0; rest &= rest - 1)
        out.push_back(std::countr_zero(rest) + 1);
    return out;
}

Monomial Monomial::shifted(int offset) const {
    if (bits_ == 0) return *this;
    if (offset < 0 || top_generator() + offset > kMaxRank)
        throw InvalidArgument(fmt::format("cannot shift {} by {}", to_string(*this), offset));
    return Monomial(bits_ << offset);
}

std::strong_ordering operator<=>(Monomial a, Monomial b) noexcept {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    if (a.bits_ == b.bits_) return std::strong_ordering::equal;
    // Same size: the set holding the smallest differing generator is lexicographically first.
    const std::uint32_t lowest = (a.bits_ ^ b.bits_) & (~(a.bits_ ^ b.bits_) + 1);
    return (a.bits_ & lowest) != 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

int merge_sign(Monomial a, Monomial b) noexcept {
    if (!a.disjoint(b)) return 0;
    // Each generator of b must pass over every larger generator of a.
    int transpositions = 0;
    for (std::uint32_t rest = b.bits(); rest != 0; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        const std::uint32_t above = j == 31 ? 0 : (~std::uint32_t{0} << (j + 1));
        transpositions += std::popcount(a.bits() & above);
    }
    return (transpositions & 1) != 0 ? -1 : 1;
}

std::string to_string(Monomial m, std::string_view symbol) {
    if (m.is_unit()) return "1";
    return fmt::format("{}[{}]", symbol, fmt::join(m.generators(), ","));
}

ExteriorClass::ExteriorClass(int rank) : rank_(rank) { check_rank(rank); }

ExteriorClass::ExteriorClass(int rank, Terms terms) : rank_(rank) {
    check_rank(rank);
    for (auto& [m, c] : terms) {
        check_fits(rank, m);
        if (c != 0) terms_.emplace(m, std::move(c));
    }
}

ExteriorClass ExteriorClass::unit(int rank) { return monomial(rank, Monomial{}); }

ExteriorClass ExteriorClass::monomial(int rank, Monomial m, Integer coefficient) {
    return ExteriorClass(rank, Terms{{m, std::move(coefficient)}});
}

ExteriorClass ExteriorClass::generator(int rank, int k) {
    return monomial(rank, Monomial::generator(k));
}

Integer ExteriorClass::coefficient(Monomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Integer{0} : it->second;
}

std::optional<int> ExteriorClass::degree() const {
    if (terms_.empty()) return std::nullopt;
    const int d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
        if (m.degree() != d) return std::nullopt;
    return d;
}

ExteriorClass ExteriorClass::homogeneous_part(int degree) const {
    Terms out;
    for (const auto& [m, c] : terms_)
        if (m.degree() == degree) out.emplace(m, c);
    return ExteriorClass(rank_, std::move(out));
}

ExteriorClass ExteriorClass::operator-() const {
    ExteriorClass out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

ExteriorClass add(const ExteriorClass& a, const ExteriorClass& b) {
    check_same_rank(a.rank(), b.rank());
    ExteriorClass::Terms terms = a.terms();
    for (const auto& [m, c] : b.terms()) terms[m] += c;
    return ExteriorClass(a.rank(), std::move(terms));
}

ExteriorClass scale(const Integer& n, const ExteriorClass& a) {
    ExteriorClass::Terms terms;
    if (n != 0)
        for (const auto& [m, c] : a.terms()) terms.emplace(m, n * c);
    return ExteriorClass(a.rank(), std::move(terms));
}

ExteriorClass wedge(const ExteriorClass& a, const ExteriorClass& b) {
    check_same_rank(a.rank(), b.rank());
    ExteriorClass::Terms terms;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            const int sign = merge_sign(ma, mb);
            if (sign == 0) continue;
            Integer& slot = terms[ma | mb];
            if (sign > 0)
                slot += ca * cb;
            else
                slot -= ca * cb;
        }
    }
    return ExteriorClass(a.rank(), std::move(terms));
}

Integer top_coefficient(const ExteriorClass& a) { return a.coefficient(Monomial::full(a.rank())); }

std::string to_string(const ExteriorClass& a, std::string_view symbol) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : a.terms()) {
        const bool negative = c < 0;
        const Integer magnitude = negative ? Integer(-c) : c;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        if (m.is_unit()) {
            out += magnitude.str();
        } else {
            if (magnitude != 1) out += magnitude.str() + "*";
            out += to_string(m, symbol);
        }
    }
    return out;
}

Mod2Class::Mod2Class(int rank) : rank_(rank) { check_rank(rank); }

Mod2Class::Mod2Class(int rank, std::set<Monomial> monomials) : rank_(rank), monomials_(std::move(monomials)) {
    check_rank(rank);
    for (Monomial m : monomials_) check_fits(rank, m);
}

Mod2Class Mod2Class::unit(int rank) { return monomial(rank, Monomial{}); }

Mod2Class Mod2Class::monomial(int rank, Monomial m) { return Mod2Class(rank, {m}); }

std::optional<int> Mod2Class::degree() const {
    if (monomials_.empty()) return std::nullopt;
    const int d = monomials_.begin()->degree();
    for (Monomial m : monomials_)
        if (m.degree() != d) return std::nullopt;
    return d;
}

namespace {

void toggle(std::set<Monomial>& set, Monomial m) {
    if (auto [it, inserted] = set.insert(m); !inserted) set.erase(it);
}

}  // namespace

Mod2Class add(const Mod2Class& a, const Mod2Class& b) {
    check_same_rank(a.rank(), b.rank());
    std::set<Monomial> out = a.monomials();
    for (Monomial m : b.monomials()) toggle(out, m);
    return Mod2Class(a.rank(), std::move(out));
}

Mod2Class wedge(const Mod2Class& a, const Mod2Class& b) {
    check_same_rank(a.rank(), b.rank());
    std::set<Monomial> out;
    for (Monomial ma : a.monomials())
        for (Monomial mb : b.monomials())
            if (ma.disjoint(mb)) toggle(out, ma | mb);
    return Mod2Class(a.rank(), std::move(out));
}

std::string to_string(const Mod2Class& a, std::string_view symbol) {
    if (a.is_zero()) return "0";
    std::vector<std::string> parts;
    for (Monomial m : a.monomials()) parts.push_back(to_string(m, symbol));
    return fmt::format("{}", fmt::join(parts, " + "));
}

Mod2Class mod2(const ExteriorClass& a) {
    std::set<Monomial> out;
    for (const auto& [m, c] : a.terms())
        if (c % 2 != 0) out.insert(m);
    return Mod2Class(a.rank(), std::move(out));
}

Mod2Class sq_torus(int i, const Mod2Class& x) {
    if (i < 0) throw InvalidArgument(fmt::format("Sq^{} is undefined", i));
    return i == 0 ? x : Mod2Class(x.rank());
}

}  // namespace thomstem::ext
