#include "aeq/groupcore.hpp"

#include <cctype>
#include <numeric>

namespace aeq {

Perm::Perm(std::vector<std::uint32_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (std::uint32_t v : images_) {
        if (v >= images_.size() || seen[v])
            throw InputError("permutation images are not a bijection on {0.." +
                             std::to_string(images_.size() == 0 ? 0 : images_.size() - 1) + "}");
        seen[v] = true;
    }
}

Perm Perm::identity(std::size_t degree) {
    Perm p;
    p.images_.resize(degree);
    std::iota(p.images_.begin(), p.images_.end(), 0u);
    return p;
}

Perm Perm::from_cycles(std::size_t degree, std::string_view text) {
    Perm p = identity(degree);
    std::vector<bool> used(degree, false);
    std::size_t i = 0;
    auto skip_space = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
    };
    skip_space();
    while (i < text.size()) {
        if (text[i] != '(') throw ParseError("expected '(' in cycle notation", i);
        ++i;
        std::vector<std::uint32_t> cycle;
        skip_space();
        while (i < text.size() && text[i] != ')') {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw ParseError("expected a point index", i);
            std::size_t const start = i;
            unsigned long v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + static_cast<unsigned long>(text[i] - '0');
                if (v >= degree) throw ParseError("point out of range for degree " + std::to_string(degree), start);
                ++i;
            }
            if (used[v]) throw ParseError("point " + std::to_string(v) + " appears twice", start);
            used[v] = true;
            cycle.push_back(static_cast<std::uint32_t>(v));
            skip_space();
        }
        if (i == text.size()) throw ParseError("unterminated cycle", i);
        ++i;
        for (std::size_t k = 0; k < cycle.size(); ++k) p.images_[cycle[k]] = cycle[(k + 1) % cycle.size()];
        skip_space();
    }
    return p;
}

Perm Perm::operator*(Perm const& h) const {
    if (h.degree() != degree()) throw InputError("composing permutations of different degrees");
    Perm r;
    r.images_.resize(images_.size());
    for (std::size_t x = 0; x < images_.size(); ++x) r.images_[x] = images_[h.images_[x]];
    return r;
}

Perm Perm::inverse() const {
    Perm r;
    r.images_.resize(images_.size());
    for (std::size_t x = 0; x < images_.size(); ++x) r.images_[images_[x]] = static_cast<std::uint32_t>(x);
    return r;
}

bool Perm::is_identity() const {
    for (std::size_t x = 0; x < images_.size(); ++x)
        if (images_[x] != x) return false;
    return true;
}

std::uint64_t Perm::order() const {
    std::uint64_t result = 1;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t x = 0; x < images_.size(); ++x) {
        if (seen[x]) continue;
        std::uint64_t len = 0;
        for (std::size_t y = x; !seen[y]; y = images_[y]) {
            seen[y] = true;
            ++len;
        }
        result = std::lcm(result, len);
    }
    return result;
}

std::string Perm::to_cycle_string() const {
    std::string out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t x = 0; x < images_.size(); ++x) {
        if (seen[x] || images_[x] == x) continue;
        out += '(';
        for (std::size_t y = x; !seen[y]; y = images_[y]) {
            seen[y] = true;
            if (y != x) out += ' ';
            out += std::to_string(y);
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

std::size_t PermHash::operator()(Perm const& p) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint32_t v : p.images()) {
        h ^= v;
        h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
}

}  // namespace aeq
