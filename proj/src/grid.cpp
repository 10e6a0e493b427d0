#include "flowca/grid.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

namespace flowca {

const char* to_string(errc code) {
    switch (code) {
    case errc::dimension_too_small: return "DimensionTooSmall";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::arity_mismatch: return "ArityMismatch";
    case errc::bad_length: return "BadLength";
    case errc::bad_digit: return "BadDigit";
    case errc::bad_format: return "BadFormat";
    case errc::inadmissible_direction: return "InadmissibleDirection";
    case errc::invalid_spec: return "InvalidSpec";
    case errc::wrong_kind: return "WrongKind";
    case errc::window_too_large: return "WindowTooLarge";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::not_a_particle: return "NotAParticle";
    }
    return "Unknown";
}

namespace {

constexpr std::array<Offset, 9> moore_offsets{{
    {-1, 1}, {0, 1}, {1, 1},
    {-1, 0}, {0, 0}, {1, 0},
    {-1, -1}, {0, -1}, {1, -1},
}};

constexpr std::array<Offset, 5> von_neumann_offsets{{
    {0, 1}, {-1, 0}, {0, 0}, {1, 0}, {0, -1},
}};

constexpr std::array<Offset, 6> rect2x3_offsets{{
    {-1, 0}, {0, 0}, {1, 0},
    {-1, -1}, {0, -1}, {1, -1},
}};

int wrap(int v, int n) {
    const int r = v % n;
    return r < 0 ? r + n : r;
}

} // namespace

std::span<const Offset> neighborhood_offsets(NeighborhoodKind kind) {
    switch (kind) {
    case NeighborhoodKind::moore9: return moore_offsets;
    case NeighborhoodKind::von_neumann5: return von_neumann_offsets;
    case NeighborhoodKind::rect2x3: return rect2x3_offsets;
    }
    return {};
}

int neighborhood_size(NeighborhoodKind kind) {
    return static_cast<int>(neighborhood_offsets(kind).size());
}

int neighborhood_position(NeighborhoodKind kind, Offset o) {
    const auto offs = neighborhood_offsets(kind);
    const auto it = std::find(offs.begin(), offs.end(), o);
    return it == offs.end() ? -1 : static_cast<int>(it - offs.begin());
}

bool in_neighborhood(NeighborhoodKind kind, Offset o) {
    return neighborhood_position(kind, o) >= 0;
}

std::string_view to_string(NeighborhoodKind kind) {
    switch (kind) {
    case NeighborhoodKind::moore9: return "moore";
    case NeighborhoodKind::von_neumann5: return "vonneumann";
    case NeighborhoodKind::rect2x3: return "2x3";
    }
    return "?";
}

NeighborhoodKind parse_neighborhood(std::string_view name) {
    if (name == "moore") return NeighborhoodKind::moore9;
    if (name == "vonneumann") return NeighborhoodKind::von_neumann5;
    if (name == "2x3") return NeighborhoodKind::rect2x3;
    throw error(errc::bad_format, "unknown neighborhood '" + std::string(name) + "'");
}

Configuration::Configuration(int width, int height)
    : width_(width), height_(height), words_per_row_(0) {
    if (width < 3 || height < 3) {
        throw error(errc::dimension_too_small,
                    "grid must be at least 3x3, got " + std::to_string(width) + "x" +
                        std::to_string(height));
    }
    words_per_row_ = (static_cast<std::size_t>(width) + 63) / 64;
    words_.assign(words_per_row_ * static_cast<std::size_t>(height), 0);
}

Coord Configuration::normalize(Coord c) const {
    return {wrap(c.i, width_), wrap(c.j, height_)};
}

bool Configuration::get(Coord c) const {
    const Coord n = normalize(c);
    return (words_[index(n.i, n.j)] >> (n.i % 64)) & 1u;
}

void Configuration::set(Coord c, bool v) {
    const Coord n = normalize(c);
    const std::uint64_t bit = std::uint64_t{1} << (n.i % 64);
    auto& w = words_[index(n.i, n.j)];
    w = v ? (w | bit) : (w & ~bit);
}

int Configuration::population() const {
    int n = 0;
    for (const std::uint64_t w : words_) {
        n += std::popcount(w);
    }
    return n;
}

Configuration make_config(int width, int height, std::span<const std::string> rows) {
    Configuration config(width, height);
    if (rows.size() != static_cast<std::size_t>(height)) {
        throw error(errc::shape_mismatch, "expected " + std::to_string(height) + " rows, got " +
                                              std::to_string(rows.size()));
    }
    for (int r = 0; r < height; ++r) {
        const int j = height - 1 - r;
        int i = 0;
        for (const char ch : rows[static_cast<std::size_t>(r)]) {
            if (ch == ' ' || ch == '\t') continue;
            if (ch != '0' && ch != '1') {
                throw error(errc::bad_format, std::string("unexpected cell character '") + ch + "'");
            }
            if (i >= width) {
                throw error(errc::shape_mismatch, "row " + std::to_string(r) + " is too long");
            }
            config.set({i, j}, ch == '1');
            ++i;
        }
        if (i != width) {
            throw error(errc::shape_mismatch, "row " + std::to_string(r) + " has " +
                                                  std::to_string(i) + " cells, expected " +
                                                  std::to_string(width));
        }
    }
    return config;
}

Configuration make_config(int width, int height, std::initializer_list<std::string_view> rows) {
    std::vector<std::string> owned(rows.begin(), rows.end());
    return make_config(width, height, owned);
}

std::vector<bool> neighborhood_pattern(const Configuration& config, Coord center,
                                       NeighborhoodKind kind) {
    const auto offs = neighborhood_offsets(kind);
    std::vector<bool> out;
    out.reserve(offs.size());
    for (const Offset o : offs) {
        out.push_back(config.get(center + o));
    }
    return out;
}

Configuration translate(const Configuration& config, Offset by) {
    Configuration out(config.width(), config.height());
    for (int j = 0; j < config.height(); ++j) {
        for (int i = 0; i < config.width(); ++i) {
            if (config.get({i, j})) out.set(Coord{i, j} + by, true);
        }
    }
    return out;
}

namespace {

// Next whitespace-separated token, skipping '#' comments.
bool next_token(std::istream& in, std::string& tok) {
    tok.clear();
    char ch;
    while (in.get(ch)) {
        if (ch == '#') {
            std::string discard;
            std::getline(in, discard);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        tok.push_back(ch);
        break;
    }
    if (tok.empty()) return false;
    while (in.get(ch)) {
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == '#') {
            in.unget();
            break;
        }
        tok.push_back(ch);
    }
    return true;
}

int parse_dim(const std::string& tok) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(),
                                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw error(errc::bad_format, "bad PBM dimension '" + tok + "'");
    }
    return std::stoi(tok);
}

} // namespace

Configuration read_pbm(std::istream& in) {
    std::string tok;
    if (!next_token(in, tok) || tok != "P1") {
        throw error(errc::bad_format, "expected PBM magic 'P1', got '" + tok + "'");
    }
    if (!next_token(in, tok)) throw error(errc::bad_format, "missing PBM width");
    const int width = parse_dim(tok);
    if (!next_token(in, tok)) throw error(errc::bad_format, "missing PBM height");
    const int height = parse_dim(tok);
    Configuration config(width, height);

    // Cells may be packed ("0110") or space separated ("0 1 1 0").
    long long expected = static_cast<long long>(width) * height;
    long long seen = 0;
    while (seen < expected && next_token(in, tok)) {
        for (const char ch : tok) {
            if (ch != '0' && ch != '1') {
                throw error(errc::bad_format, std::string("bad PBM cell '") + ch + "'");
            }
            if (seen >= expected) throw error(errc::shape_mismatch, "too many PBM cells");
            const int r = static_cast<int>(seen / width);
            const int i = static_cast<int>(seen % width);
            config.set({i, height - 1 - r}, ch == '1');
            ++seen;
        }
    }
    if (seen != expected) {
        throw error(errc::shape_mismatch, "PBM has " + std::to_string(seen) + " cells, expected " +
                                              std::to_string(expected));
    }
    if (next_token(in, tok)) throw error(errc::shape_mismatch, "trailing data after PBM raster");
    return config;
}

Configuration parse_pbm(std::string_view text) {
    std::istringstream in{std::string(text)};
    return read_pbm(in);
}

void write_pbm(std::ostream& out, const Configuration& config) {
    out << "P1\n" << config.width() << ' ' << config.height() << '\n';
    for (int j = config.height() - 1; j >= 0; --j) {
        for (int i = 0; i < config.width(); ++i) {
            out << (config.get({i, j}) ? '1' : '0');
        }
        out << '\n';
    }
}

std::string to_pbm(const Configuration& config) {
    std::ostringstream out;
    write_pbm(out, config);
    return out.str();
}

} // namespace flowca
