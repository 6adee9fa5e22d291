#include "aeq/groupcore.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <sstream>

namespace aeq {

namespace {

std::vector<std::uint32_t> block_cycle(std::size_t offset, std::size_t n, std::size_t total) {
    std::vector<std::uint32_t> images(total);
    std::iota(images.begin(), images.end(), 0u);
    for (std::size_t i = 0; i < n; ++i) images[offset + i] = static_cast<std::uint32_t>(offset + (i + 1) % n);
    return images;
}

// A v over F_2, with v and the rows of A as bit masks.
std::uint8_t apply(F2Matrix const& a, std::uint8_t v) {
    std::uint8_t out = 0;
    for (unsigned i = 0; i < 3; ++i)
        if (std::popcount(static_cast<unsigned>(a[i] & v)) & 1) out |= static_cast<std::uint8_t>(1u << i);
    return out;
}

bool pairing(std::uint8_t w, std::uint8_t v) { return std::popcount(static_cast<unsigned>(w & v)) & 1; }

std::size_t parse_size(std::string const& text, std::string const& spec) {
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        text.size() > 9)
        throw InputError("bad size '" + text + "' in group name '" + spec + "'");
    return std::stoul(text);
}

}  // namespace

ElemId DirectProduct::embed_left(ElemId a) const {
    auto images = left->element(a).images();
    for (std::size_t i = 0; i < right->degree(); ++i) images.push_back(static_cast<std::uint32_t>(left->degree() + i));
    return group->index_of(Perm(std::move(images)));
}

ElemId DirectProduct::embed_right(ElemId b) const {
    std::vector<std::uint32_t> images(left->degree());
    std::iota(images.begin(), images.end(), 0u);
    for (std::uint32_t v : right->element(b).images()) images.push_back(static_cast<std::uint32_t>(left->degree() + v));
    return group->index_of(Perm(std::move(images)));
}

DirectProduct direct_product(GroupPtr left, GroupPtr right) {
    std::size_t const n = left->degree() + right->degree();
    std::vector<Perm> gens;
    for (auto const& g : left->generators()) {
        auto images = g.images();
        for (std::size_t i = left->degree(); i < n; ++i) images.push_back(static_cast<std::uint32_t>(i));
        gens.emplace_back(std::move(images));
    }
    for (auto const& h : right->generators()) {
        std::vector<std::uint32_t> images(left->degree());
        std::iota(images.begin(), images.end(), 0u);
        for (std::uint32_t v : h.images()) images.push_back(static_cast<std::uint32_t>(left->degree() + v));
        gens.emplace_back(std::move(images));
    }
    return {generate_group(n, std::move(gens)), std::move(left), std::move(right)};
}

GroupPtr cyclic_group(std::size_t n) {
    if (n == 0) throw InputError("cyclic group needs n >= 1");
    if (n == 1) return generate_group(1, {});
    return generate_group(n, {Perm(block_cycle(0, n, n))});
}

GroupPtr dihedral_group(std::size_t n) {
    if (n < 3) throw InputError("dihedral group needs n >= 3");
    std::vector<std::uint32_t> flip(n);
    for (std::size_t i = 0; i < n; ++i) flip[i] = static_cast<std::uint32_t>((n - i) % n);
    return generate_group(n, {Perm(block_cycle(0, n, n)), Perm(std::move(flip))});
}

GroupPtr symmetric_group(std::size_t n) {
    if (n == 0) throw InputError("symmetric group needs n >= 1");
    if (n == 1) return generate_group(1, {});
    return generate_group(n, {Perm(block_cycle(0, 2, n)), Perm(block_cycle(0, n, n))});
}

GroupPtr abelian_group(std::vector<std::size_t> const& invariants) {
    if (invariants.empty()) throw InputError("abelian group needs at least one cyclic factor");
    std::size_t const total = std::accumulate(invariants.begin(), invariants.end(), std::size_t{0});
    std::vector<Perm> gens;
    std::size_t offset = 0;
    for (std::size_t n : invariants) {
        if (n == 0) throw InputError("cyclic factor of order 0");
        if (n > 1) gens.emplace_back(block_cycle(offset, n, total));
        offset += n;
    }
    return generate_group(total, std::move(gens));
}

std::vector<F2Matrix> gl3f2_matrices() {
    std::vector<F2Matrix> out;
    for (unsigned code = 0; code < 512; ++code) {
        F2Matrix const a{static_cast<std::uint8_t>(code & 7), static_cast<std::uint8_t>((code >> 3) & 7),
                         static_cast<std::uint8_t>((code >> 6) & 7)};
        bool invertible = true;
        for (std::uint8_t v = 1; v < 8 && invertible; ++v) invertible = apply(a, v) != 0;
        if (invertible) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Perm gl3f2_point_action(F2Matrix const& a) {
    std::vector<std::uint32_t> images(7);
    for (std::uint8_t v = 1; v < 8; ++v) images[v - 1u] = apply(a, v) - 1u;
    return Perm(std::move(images));
}

Perm gl3f2_plane_action(F2Matrix const& a) {
    std::vector<std::uint32_t> images(7);
    for (std::uint8_t w = 1; w < 8; ++w) {
        std::uint8_t image_set = 0;  // bit v set when A v is in the image plane, v = 1..7
        for (std::uint8_t v = 1; v < 8; ++v)
            if (!pairing(w, v)) image_set |= static_cast<std::uint8_t>(1u << (apply(a, v) - 1u));
        for (std::uint8_t u = 1; u < 8; ++u) {
            std::uint8_t kernel = 0;
            for (std::uint8_t v = 1; v < 8; ++v)
                if (!pairing(u, v)) kernel |= static_cast<std::uint8_t>(1u << (v - 1u));
            if (kernel == image_set) images[w - 1u] = u - 1u;
        }
    }
    return Perm(std::move(images));
}

std::vector<F2Matrix> gl3f2_generator_matrices() {
    std::vector<F2Matrix> out;
    for (unsigned i = 0; i < 3; ++i) {
        for (unsigned j = 0; j < 3; ++j) {
            if (i == j) continue;
            F2Matrix a{1, 2, 4};
            a[i] = static_cast<std::uint8_t>(a[i] | (1u << j));
            out.push_back(a);
        }
    }
    return out;
}

GroupPtr gl3f2_point_group() {
    std::vector<Perm> gens;
    for (auto const& a : gl3f2_generator_matrices()) gens.push_back(gl3f2_point_action(a));
    return generate_group(7, std::move(gens));
}

GroupPtr gl3f2_plane_group() {
    std::vector<Perm> gens;
    for (auto const& a : gl3f2_generator_matrices()) gens.push_back(gl3f2_plane_action(a));
    return generate_group(7, std::move(gens));
}

Subgroup gl3f2_point_stabilizer(GroupPtr const& points) { return Subgroup::point_stabilizer(points, 0); }

Subgroup gl3f2_plane_stabilizer(GroupPtr const& points) { return Subgroup::setwise_stabilizer(points, {1, 3, 5}); }

GroupPtr named_group(std::string const& spec) {
    if (spec == "gl3f2-points") return gl3f2_point_group();
    if (spec == "gl3f2-planes") return gl3f2_plane_group();
    auto const colon = spec.find(':');
    if (colon == std::string::npos) throw InputError("unknown group '" + spec + "'");
    std::string const kind = spec.substr(0, colon);
    std::string const arg = spec.substr(colon + 1);
    if (kind == "cyclic") return cyclic_group(parse_size(arg, spec));
    if (kind == "dihedral") return dihedral_group(parse_size(arg, spec));
    if (kind == "sym") {
        std::size_t const n = parse_size(arg, spec);
        if (n > 9) throw InputError("sym:<n> is limited to n <= 9");
        return symmetric_group(n);
    }
    if (kind == "abelian") {
        std::vector<std::size_t> invariants;
        std::size_t start = 0;
        while (true) {
            auto const x = arg.find('x', start);
            invariants.push_back(parse_size(arg.substr(start, x - start), spec));
            if (x == std::string::npos) break;
            start = x + 1;
        }
        return abelian_group(invariants);
    }
    throw InputError("unknown group family '" + kind + "'");
}

GroupPtr parse_group_fixture(std::string const& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> degree;
    std::vector<Perm> gens;
    while (std::getline(in, line)) {
        ++line_no;
        auto const first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        line = line.substr(first);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
        if (!degree) {
            std::istringstream head(line);
            std::string word;
            long long n = -1;
            std::string rest;
            if (!(head >> word >> n) || word != "degree" || n < 1 || (head >> rest))
                throw InputError("group fixture line " + std::to_string(line_no) + ": expected 'degree <n>'");
            degree = static_cast<std::size_t>(n);
            continue;
        }
        try {
            gens.push_back(Perm::from_cycles(*degree, line));
        } catch (ParseError const& e) {
            throw InputError("group fixture line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!degree) throw InputError("group fixture is missing the 'degree <n>' line");
    return generate_group(*degree, std::move(gens));
}

GroupPtr load_group(std::string const& name_or_path) {
    if (name_or_path.rfind("gl3f2-", 0) == 0 || name_or_path.find(':') != std::string::npos)
        return named_group(name_or_path);
    std::ifstream in(name_or_path);
    if (!in) throw InputError("cannot open group fixture '" + name_or_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_group_fixture(buf.str());
}

}  // namespace aeq
