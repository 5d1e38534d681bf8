#pragma once

#include "fibersym/linalg.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fibersym {

enum class SurfaceKind { torus4, sphere4 };

/// H1 model of a punctured surface: ordered basis labels plus the algebraic
/// intersection pairing on that basis.
struct SurfaceModel {
    SurfaceKind kind;
    int genus = 0;
    int punctures = 0;
    Eigen::Index h1_rank = 0;
    std::vector<std::string> basis_labels;
    MatrixQ pairing;  // pairing(i,j) = <basis_i, basis_j>, antisymmetric

    /// Four-punctured torus, basis (a0, a1, a2, a3, b0) with a_i.b0 = 1.
    static const SurfaceModel& torus4() {
        static const SurfaceModel m = [] {
            SurfaceModel s;
            s.kind = SurfaceKind::torus4;
            s.genus = 1;
            s.punctures = 4;
            s.h1_rank = 5;
            s.basis_labels = {"a0", "a1", "a2", "a3", "b0"};
            s.pairing = MatrixQ::Zero(5, 5);
            for (int i = 0; i < 4; ++i) {
                s.pairing(i, 4) = 1;
                s.pairing(4, i) = -1;
            }
            return s;
        }();
        return m;
    }

    /// Four-punctured sphere, basis (x1, x2, x3); the pairing vanishes.
    static const SurfaceModel& sphere4() {
        static const SurfaceModel m = [] {
            SurfaceModel s;
            s.kind = SurfaceKind::sphere4;
            s.genus = 0;
            s.punctures = 4;
            s.h1_rank = 3;
            s.basis_labels = {"x1", "x2", "x3"};
            s.pairing = MatrixQ::Zero(3, 3);
            return s;
        }();
        return m;
    }
};

/// An integer homology class in the surface's H1 basis.
struct CurveClass {
    VectorQ coeffs;
};

/// Global transvection sign. Pinned by the golden monodromy matrix test in
/// test_surfaces.cpp; flipping it inverts every twist.
inline constexpr int kTwistSign = +1;

/// Meridian-type class a_k, indices cyclic (a4 = a0).
inline CurveClass meridian_class(int k) {
    VectorQ v = VectorQ::Zero(5);
    v(((k % 4) + 4) % 4) = 1;
    return {v};
}

/// Longitude-type class b_k = a0 + b0 - a_k, with b_0 = b0 (indices cyclic,
/// so b4 = b0 again).
inline CurveClass longitude_class(int k) {
    VectorQ v = VectorQ::Zero(5);
    v(4) = 1;
    int kk = ((k % 4) + 4) % 4;
    if (kk != 0) {
        v(0) += 1;
        v(kk) -= 1;
    }
    return {v};
}

/// Transvection x -> x + sign * <x, c> * c along the class c. Fixes c and has
/// determinant 1 for every class with <c, c> = 0 (always, by antisymmetry).
inline MatrixQ dehn_twist_matrix(const CurveClass& c, const SurfaceModel& s) {
    if (c.coeffs.size() != s.h1_rank)
        throw std::invalid_argument("dehn_twist_matrix: class has wrong length");
    VectorQ pc = s.pairing * c.coeffs;
    return MatrixQ::Identity(s.h1_rank, s.h1_rank) +
           Rational(kTwistSign) * c.coeffs * pc.transpose();
}

namespace detail {
inline void require_torus(const SurfaceModel& s, const char* who) {
    if (s.kind != SurfaceKind::torus4)
        throw std::invalid_argument(std::string(who) + ": defined on the torus model only");
}
inline void require_index(int i, int lo, int hi, const char* who) {
    if (i < lo || i > hi) throw std::invalid_argument(std::string(who) + ": index out of range");
}
}  // namespace detail

/// H1 action of the point-push along the meridian loop through puncture i.
///
/// The twist-pair realization is calibrated once against the golden monodromy
/// matrix (see test_surfaces.cpp): rho_i acts as the twist pair along the
/// longitude classes b_{i+1}, b_i.
inline MatrixQ push_rho_matrix(int i, const SurfaceModel& s) {
    detail::require_torus(s, "push_rho_matrix");
    detail::require_index(i, 1, 4, "push_rho_matrix");
    return dehn_twist_matrix(longitude_class(i + 1), s) *
           inverse_exact(dehn_twist_matrix(longitude_class(i), s));
}

/// H1 action of the point-push along the longitude loop through puncture i,
/// calibrated as the twist pair along the meridian classes a_{i+1}, a_i.
inline MatrixQ push_tau_matrix(int i, const SurfaceModel& s) {
    detail::require_torus(s, "push_tau_matrix");
    detail::require_index(i, 1, 4, "push_tau_matrix");
    return dehn_twist_matrix(meridian_class(i + 1), s) *
           inverse_exact(dehn_twist_matrix(meridian_class(i), s));
}

/// Point-push along the longitude through puncture i written as a ten-twist
/// conjugation product over the base classes a_*, b0 only.
inline MatrixQ longitude_push_via_conjugation(int i, const SurfaceModel& s) {
    detail::require_torus(s, "longitude_push_via_conjugation");
    detail::require_index(i, 1, 4, "longitude_push_via_conjugation");
    auto T = [&](const CurveClass& c) { return dehn_twist_matrix(c, s); };
    auto Tinv = [&](const CurveClass& c) { return inverse_exact(dehn_twist_matrix(c, s)); };
    CurveClass am1 = meridian_class(i - 1), ai = meridian_class(i);
    CurveClass a0 = meridian_class(0), b0 = longitude_class(0);
    return T(am1) * T(b0) * Tinv(a0) * Tinv(b0) * Tinv(am1) *
           T(ai) * T(b0) * T(a0) * Tinv(b0) * Tinv(ai);
}

/// Same point-push as a twist pair along the combined classes b_i, b_{i-1}.
inline MatrixQ longitude_push_via_classes(int i, const SurfaceModel& s) {
    detail::require_torus(s, "longitude_push_via_classes");
    detail::require_index(i, 1, 4, "longitude_push_via_classes");
    return dehn_twist_matrix(longitude_class(i), s) *
           inverse_exact(dehn_twist_matrix(longitude_class(i - 1), s));
}

/// H1 action of the half twist exchanging sphere punctures i and i+1, on the
/// basis (x1, x2, x3) with x4 = -x1-x2-x3. Involutive.
inline MatrixQ braid_sigma_matrix(int i, const SurfaceModel& s) {
    if (s.kind != SurfaceKind::sphere4)
        throw std::invalid_argument("braid_sigma_matrix: defined on the sphere model only");
    detail::require_index(i, 1, 3, "braid_sigma_matrix");
    MatrixQ m = MatrixQ::Identity(3, 3);
    if (i < 3) {
        m(i - 1, i - 1) = 0;
        m(i, i) = 0;
        m(i - 1, i) = 1;
        m(i, i - 1) = 1;
    } else {
        m(0, 2) = -1;
        m(1, 2) = -1;
        m(2, 2) = -1;
    }
    return m;
}

// ---------------------------------------------------------------------------
// Words in the mapping class generators

enum class GenKind { rho, tau, sigma, twist, a_rel, c_rel };

struct Letter {
    GenKind kind;
    int i = 0;       // generator index; for twist letters 0..3 = a0..a3, 4 = b0
    int j = 0;       // second index of A/C letters
    long exponent = 1;

    friend bool operator==(const Letter&, const Letter&) = default;
    bool same_generator(const Letter& o) const { return kind == o.kind && i == o.i && j == o.j; }
};

struct MCGWord {
    SurfaceKind surface = SurfaceKind::torus4;
    std::vector<Letter> letters;  // listed left to right, composed right to left
};

struct HomologyAction {
    MatrixQ on_h1;       // action on H1, column-vector convention
    MatrixQ on_h1_dual;  // transpose of on_h1
};

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

namespace detail {

inline int parse_idx(const std::string& tok, std::size_t k, std::size_t base, const char* gen) {
    if (k >= tok.size() || tok[k] < '1' || tok[k] > '4')
        throw ParseError(std::string(gen) + " needs an index in 1..4", base + k);
    return tok[k] - '0';
}

inline Letter parse_token(const std::string& tok, std::size_t base, SurfaceKind surface) {
    Letter letter;
    std::size_t k = 0;
    const bool torus = surface == SurfaceKind::torus4;
    switch (tok[0]) {
        case 'r':
            if (!torus) throw ParseError("rho letters require the torus model", base);
            letter.kind = GenKind::rho;
            letter.i = parse_idx(tok, 1, base, "r");
            k = 2;
            break;
        case 't':
            if (!torus) throw ParseError("tau letters require the torus model", base);
            letter.kind = GenKind::tau;
            letter.i = parse_idx(tok, 1, base, "t");
            k = 2;
            break;
        case 's':
            if (torus) throw ParseError("sigma letters require the sphere model", base);
            letter.kind = GenKind::sigma;
            letter.i = parse_idx(tok, 1, base, "s");
            if (letter.i > 3) throw ParseError("sigma index must be in 1..3", base + 1);
            k = 2;
            break;
        case 'T': {
            if (!torus) throw ParseError("twist letters require the torus model", base);
            if (tok.compare(0, 3, "Tb0") == 0) {
                letter.i = 4;
            } else if (tok.size() >= 3 && tok[1] == 'a' && tok[2] >= '0' && tok[2] <= '3') {
                letter.i = tok[2] - '0';
            } else {
                throw ParseError("unknown twist letter (expected Ta0..Ta3 or Tb0)", base);
            }
            letter.kind = GenKind::twist;
            k = 3;
            break;
        }
        case 'A':
        case 'C':
            if (!torus) throw ParseError("A/C letters require the torus model", base);
            letter.kind = tok[0] == 'A' ? GenKind::a_rel : GenKind::c_rel;
            letter.i = parse_idx(tok, 1, base, "A/C");
            letter.j = parse_idx(tok, 2, base, "A/C");
            if (letter.i >= letter.j) throw ParseError("A/C letters need i < j", base + 1);
            k = 3;
            break;
        default:
            throw ParseError("unknown token '" + tok + "'", base);
    }
    if (k < tok.size()) {
        if (tok[k] != '^') throw ParseError("unexpected characters in token '" + tok + "'", base + k);
        std::size_t pos = 0;
        long e = 0;
        try {
            e = std::stol(tok.substr(k + 1), &pos);
        } catch (const std::exception&) {
            throw ParseError("malformed exponent in '" + tok + "'", base + k + 1);
        }
        if (pos != tok.size() - k - 1)
            throw ParseError("malformed exponent in '" + tok + "'", base + k + 1);
        if (e == 0) throw ParseError("exponent must be nonzero", base + k + 1);
        letter.exponent = e;
    }
    return letter;
}

}  // namespace detail

/// Parses a whitespace-separated generator word; see the README for the
/// grammar. Empty input is the identity word. Throws ParseError with the
/// offending character position.
inline MCGWord parse_word(const std::string& text, const SurfaceModel& s) {
    MCGWord word;
    word.surface = s.kind;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            continue;
        }
        std::size_t end = pos;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
        word.letters.push_back(detail::parse_token(text.substr(pos, end - pos), pos, s.kind));
        pos = end;
    }
    return word;
}

namespace detail {

inline void push_reduced(std::vector<Letter>& out, Letter letter) {
    if (letter.exponent == 0) return;
    if (!out.empty() && out.back().same_generator(letter)) {
        out.back().exponent += letter.exponent;
        if (out.back().exponent == 0) out.pop_back();
        return;
    }
    out.push_back(letter);
}

inline std::vector<Letter> ac_expansion(const Letter& letter) {
    // A_ij = r_i t_j^-1 r_i^-1 t_j ; C_ij = t_i r_j^-1 t_i^-1 r_j
    GenKind first = letter.kind == GenKind::a_rel ? GenKind::rho : GenKind::tau;
    GenKind second = letter.kind == GenKind::a_rel ? GenKind::tau : GenKind::rho;
    std::vector<Letter> base = {{first, letter.i, 0, 1},
                                {second, letter.j, 0, -1},
                                {first, letter.i, 0, -1},
                                {second, letter.j, 0, 1}};
    std::vector<Letter> out;
    long reps = letter.exponent > 0 ? letter.exponent : -letter.exponent;
    for (long r = 0; r < reps; ++r) {
        if (letter.exponent > 0) {
            for (const auto& l : base) out.push_back(l);
        } else {
            for (auto it = base.rbegin(); it != base.rend(); ++it) {
                Letter inv = *it;
                inv.exponent = -inv.exponent;
                out.push_back(inv);
            }
        }
    }
    return out;
}

}  // namespace detail

/// Replaces every A/C letter by its four-letter expansion and freely reduces
/// the result (adjacent equal generators merge, trivial letters cancel).
inline MCGWord expand_relations(const MCGWord& w) {
    MCGWord out;
    out.surface = w.surface;
    for (const auto& letter : w.letters) {
        if (letter.kind == GenKind::a_rel || letter.kind == GenKind::c_rel) {
            for (const auto& l : detail::ac_expansion(letter)) detail::push_reduced(out.letters, l);
        } else {
            detail::push_reduced(out.letters, letter);
        }
    }
    return out;
}

inline MatrixQ letter_matrix(const Letter& letter, const SurfaceModel& s) {
    switch (letter.kind) {
        case GenKind::rho: return push_rho_matrix(letter.i, s);
        case GenKind::tau: return push_tau_matrix(letter.i, s);
        case GenKind::sigma: return braid_sigma_matrix(letter.i, s);
        case GenKind::twist:
            return dehn_twist_matrix(letter.i == 4 ? longitude_class(0) : meridian_class(letter.i), s);
        case GenKind::a_rel:
        case GenKind::c_rel: {
            MatrixQ m = MatrixQ::Identity(s.h1_rank, s.h1_rank);
            Letter unit = letter;
            unit.exponent = 1;
            for (const auto& l : detail::ac_expansion(unit))
                m = (m * pow_exact(letter_matrix({l.kind, l.i, 0, 1}, s), l.exponent)).eval();
            return m;
        }
    }
    throw std::logic_error("letter_matrix: unreachable");
}

/// Matrix of the word on H1. Letters are listed left to right but compose
/// right to left as functions, which is exactly the left-to-right matrix
/// product on column vectors.
inline HomologyAction evaluate_word(const MCGWord& w) {
    const SurfaceModel& s =
        w.surface == SurfaceKind::torus4 ? SurfaceModel::torus4() : SurfaceModel::sphere4();
    MatrixQ m = MatrixQ::Identity(s.h1_rank, s.h1_rank);
    for (const auto& letter : w.letters) {
        Letter unit = letter;
        unit.exponent = 1;
        m = (m * pow_exact(letter_matrix(unit, s), letter.exponent)).eval();
    }
    return HomologyAction{m, m.transpose()};
}

inline bool is_torelli(const MCGWord& w) {
    const HomologyAction action = evaluate_word(w);
    return action.on_h1 == MatrixQ::Identity(action.on_h1.rows(), action.on_h1.cols());
}

}  // namespace fibersym
