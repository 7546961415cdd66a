#include "thomstem/stems.hpp"

#include <algorithm>
#include <map>
#include <regex>

#include <fmt/format.h>

#include "thomstem/errors.hpp"

namespace thomstem {

AbelianGroup::AbelianGroup(int free_rank, std::vector<std::int64_t> torsion) : free_rank_(free_rank) {
    if (free_rank < 0) throw InvalidArgument("free rank must be nonnegative");
    for (std::int64_t t : torsion) {
        if (t < 1) throw InvalidArgument(fmt::format("torsion order {} is not positive", t));
        if (t > 1) torsion_.push_back(t);
    }
    std::sort(torsion_.begin(), torsion_.end());
}

AbelianGroup AbelianGroup::cyclic(std::int64_t order) { return AbelianGroup(0, {order}); }

std::optional<std::int64_t> AbelianGroup::order() const {
    if (free_rank_ > 0) return std::nullopt;
    std::int64_t n = 1;
    for (std::int64_t t : torsion_) n *= t;
    return n;
}

AbelianGroup operator+(const AbelianGroup& a, const AbelianGroup& b) {
    std::vector<std::int64_t> torsion = a.torsion_;
    torsion.insert(torsion.end(), b.torsion_.begin(), b.torsion_.end());
    return AbelianGroup(a.free_rank_ + b.free_rank_, std::move(torsion));
}

std::string to_string(const AbelianGroup& g) {
    if (g.is_trivial()) return "0";
    std::vector<std::string> parts;
    if (g.free_rank() == 1)
        parts.emplace_back("Z");
    else if (g.free_rank() > 1)
        parts.push_back(fmt::format("Z^{}", g.free_rank()));
    std::map<std::int64_t, int> counts;
    for (std::int64_t t : g.torsion()) ++counts[t];
    for (const auto& [order, count] : counts)
        parts.push_back(count == 1 ? fmt::format("Z/{}", order) : fmt::format("(Z/{})^{}", order, count));
    return fmt::format("{}", fmt::join(parts, " + "));
}

namespace stems {

namespace {

std::int64_t mod24(std::int64_t k) { return ((k % 24) + 24) % 24; }

void check_stem(int q) {
    if (q > kMaxStem) throw StemOutOfRange(fmt::format("stable stem pi_{} is outside the table (q <= {})", q, kMaxStem));
}

}  // namespace

AbelianGroup stem_group(int q) {
    check_stem(q);
    switch (q) {
        case 0: return AbelianGroup::integers();
        case 1: return AbelianGroup::cyclic(2);
        case 2: return AbelianGroup::cyclic(2);
        case 3: return AbelianGroup::cyclic(24);
        case 6: return AbelianGroup::cyclic(2);
        case 7: return AbelianGroup::cyclic(240);
        default: return AbelianGroup::trivial();  // q < 0, q = 4, 5
    }
}

int detecting_square(int q) noexcept {
    switch (q) {
        case 1: return 2;
        case 3: return 4;
        default: return 0;
    }
}

StemElement StemElement::zero(int q) {
    check_stem(q);
    return StemElement(q, StemKind::zero, 0);
}

StemElement StemElement::degree(std::int64_t d) {
    return d == 0 ? zero(0) : StemElement(0, StemKind::degree, d);
}

StemElement StemElement::eta() { return StemElement(1, StemKind::eta, 1); }

StemElement StemElement::eta_sq() { return StemElement(2, StemKind::eta_sq, 1); }

StemElement StemElement::nu_multiple(std::int64_t k) {
    const std::int64_t r = mod24(k);
    return r == 0 ? zero(3) : StemElement(3, StemKind::nu_multiple, r);
}

StemElement times(std::int64_t n, const StemElement& x) {
    switch (x.kind()) {
        case StemKind::zero: return x;
        case StemKind::degree: return StemElement::degree(n * x.multiple());
        case StemKind::eta: return n % 2 != 0 ? x : StemElement::zero(1);
        case StemKind::eta_sq: return n % 2 != 0 ? x : StemElement::zero(2);
        case StemKind::nu_multiple: return StemElement::nu_multiple(mod24(n) * x.multiple());
    }
    throw std::logic_error("unhandled stem kind");
}

StemElement compose(const StemElement& a, const StemElement& b) {
    const int q = a.stem() + b.stem();
    if (a.stem() < 0 || b.stem() < 0 || q > 3)
        throw StemOutOfRange(fmt::format("composition {} o {} lands in pi_{}, outside the product table",
                                         to_string(a), to_string(b), q));
    if (a.is_zero() || b.is_zero()) return StemElement::zero(q);
    if (a.kind() == StemKind::degree) return times(a.multiple(), b);
    if (b.kind() == StemKind::degree) return times(b.multiple(), a);
    if (a.kind() == StemKind::eta && b.kind() == StemKind::eta) return StemElement::eta_sq();
    // eta^3 = 12 nu
    if ((a.kind() == StemKind::eta && b.kind() == StemKind::eta_sq) ||
        (a.kind() == StemKind::eta_sq && b.kind() == StemKind::eta))
        return StemElement::nu_multiple(12);
    throw std::logic_error("composition table is incomplete");
}

std::string to_string(const StemElement& x) {
    switch (x.kind()) {
        case StemKind::zero: return "0";
        case StemKind::degree: return fmt::format("deg({})", x.multiple());
        case StemKind::eta: return "eta";
        case StemKind::eta_sq: return "eta^2";
        case StemKind::nu_multiple: return x.multiple() == 1 ? "nu" : fmt::format("{}nu", x.multiple());
    }
    return "?";
}

StemElement parse_element(const std::string& text, int zero_stem) {
    static const std::regex degree_re(R"(deg\((-?\d+)\))");
    static const std::regex nu_re(R"((-?\d*)nu)");
    std::smatch match;
    if (text == "0" || text == "zero") return StemElement::zero(zero_stem);
    if (text == "eta") return StemElement::eta();
    if (text == "eta^2" || text == "eta_sq") return StemElement::eta_sq();
    if (std::regex_match(text, match, degree_re)) return StemElement::degree(std::stoll(match[1].str()));
    if (std::regex_match(text, match, nu_re)) {
        const std::string k = match[1].str();
        return StemElement::nu_multiple(k.empty() ? 1 : k == "-" ? -1 : std::stoll(k));
    }
    throw InvalidArgument(fmt::format("unknown stem element '{}'", text));
}

}  // namespace stems
}  // namespace thomstem
