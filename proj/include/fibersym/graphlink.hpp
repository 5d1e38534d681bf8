#pragma once

#include "fibersym/rational.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fibersym {

inline Integer abs_int(Integer v) { return v < 0 ? Integer(-v) : v; }
inline Integer gcd_int(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(abs_int(a), abs_int(b));
}
inline Integer pow3(long e) {
    Integer p = 1;
    for (long k = 0; k < e; ++k) p *= 3;
    return p;
}

/// Fibration class (m1, m2) of the iterated splice link on 2n nodes.
struct GraphLinkSpec {
    long n = 1;
    Integer m1, m2;
    Integer d;  // gcd(m1, m2)
};

/// First index i in 1..2n with 3^i*m1 + 3^(2n-i+1)*m2 = 0, if any.
inline std::optional<long> first_failing_index(long n, const Integer& m1, const Integer& m2) {
    for (long i = 1; i <= 2 * n; ++i)
        if (pow3(i) * m1 + pow3(2 * n - i + 1) * m2 == 0) return i;
    return std::nullopt;
}

inline bool is_fibration(long n, const Integer& m1, const Integer& m2) {
    if (m1 == 0 && m2 == 0) return false;
    return !first_failing_index(n, m1, m2).has_value();
}

inline GraphLinkSpec make_graph_link_spec(long n, const Integer& m1, const Integer& m2) {
    if (n < 1) throw std::invalid_argument("graph link: n must be >= 1");
    if (m1 == 0 && m2 == 0) throw std::invalid_argument("graph link: (m1, m2) = (0, 0)");
    if (auto i = first_failing_index(n, m1, m2))
        throw std::domain_error("graph link: not a fibration (condition fails at i = " +
                                std::to_string(*i) + ")");
    return GraphLinkSpec{n, m1, m2, gcd_int(m1, m2)};
}

/// Edge and vertex gcd weights of the splice diagram.
struct GcdData {
    std::vector<Integer> dE;  // d_{E_1} .. d_{E_{2n-1}}
    std::vector<Integer> dV;  // d_{V_1} .. d_{V_{2n}}
};

inline GcdData gcd_data(const GraphLinkSpec& spec) {
    const long n2 = 2 * spec.n;
    GcdData g;
    for (long i = 1; i <= n2 - 1; ++i)
        g.dE.push_back(gcd_int(pow3(i) * spec.m1, pow3(n2 - i) * spec.m2));
    for (long i = 1; i <= n2; ++i) {
        if (i == 1)
            g.dV.push_back(gcd_int(spec.m1, g.dE.front()));
        else if (i == n2)
            g.dV.push_back(gcd_int(spec.m2, g.dE.back()));
        else
            g.dV.push_back(gcd_int(g.dE[static_cast<std::size_t>(i - 2)],
                                   g.dE[static_cast<std::size_t>(i - 1)]));
    }
    return g;
}

/// Signed multiset of factors (t^e - 1)^{m_e} together with its exact
/// expansion when the product is a polynomial.
struct CycloProduct {
    std::map<long, long> factors;     // exponent e -> signed multiplicity m_e
    std::vector<Integer> expansion;   // coefficients, ascending degree
    long degree = 0;
};

namespace detail {

inline long to_long_exponent(const Integer& v) {
    if (v > 1000000) throw std::domain_error("cyclotomic factor exponent too large to expand");
    return v.convert_to<long>();
}

/// Multiplicity of each cyclotomic index j in the product: sum of m_e over
/// factors with j | e.
inline std::map<long, long> cyclotomic_multiplicities(const std::map<long, long>& factors) {
    std::map<long, long> mult;
    for (const auto& [e, m] : factors)
        for (long j = 1; j <= e; ++j)
            if (e % j == 0) mult[j] += m;
    std::erase_if(mult, [](const auto& kv) { return kv.second == 0; });
    return mult;
}

inline long euler_phi(long j) {
    long phi = j;
    for (long p = 2; p * p <= j; ++p) {
        if (j % p) continue;
        while (j % p == 0) j /= p;
        phi -= phi / p;
    }
    if (j > 1) phi -= phi / j;
    return phi;
}

inline std::vector<Integer> poly_mul_cyclo(const std::vector<Integer>& a, long e) {
    // a(t) * (t^e - 1)
    std::vector<Integer> out(a.size() + static_cast<std::size_t>(e), Integer(0));
    for (std::size_t k = 0; k < a.size(); ++k) {
        out[k + static_cast<std::size_t>(e)] += a[k];
        out[k] -= a[k];
    }
    return out;
}

inline std::vector<Integer> poly_div_cyclo_exact(std::vector<Integer> a, long e) {
    // a(t) / (t^e - 1), remainder must vanish
    if (a.size() < static_cast<std::size_t>(e) + 1)
        throw std::domain_error("cyclotomic product: non-exact division");
    std::vector<Integer> q(a.size() - static_cast<std::size_t>(e), Integer(0));
    for (std::size_t k = a.size(); k-- > static_cast<std::size_t>(e);) {
        Integer c = a[k];
        if (c == 0) continue;
        q[k - static_cast<std::size_t>(e)] = c;
        a[k] = 0;
        a[k - static_cast<std::size_t>(e)] += c;
    }
    for (std::size_t k = 0; k < static_cast<std::size_t>(e); ++k)
        if (a[k] != 0) throw std::domain_error("cyclotomic product: non-exact division");
    return q;
}

}  // namespace detail

/// Restricted characteristic polynomial as an exact cyclotomic product:
/// (t^d - 1) * prod (t^{d_Ei} - 1) / prod (t^{d_Vi} - 1).
inline CycloProduct delta_prime(const GraphLinkSpec& spec) {
    const GcdData g = gcd_data(spec);
    CycloProduct cp;
    auto add = [&](const Integer& e, long m) {
        long key = detail::to_long_exponent(e);
        cp.factors[key] += m;
        if (cp.factors[key] == 0) cp.factors.erase(key);
    };
    add(spec.d, +1);
    for (const auto& e : g.dE) add(e, +1);
    for (const auto& e : g.dV) add(e, -1);

    const auto mult = detail::cyclotomic_multiplicities(cp.factors);
    for (const auto& [j, m] : mult)
        if (m < 0)
            throw std::domain_error("cyclotomic product: negative multiplicity at index " +
                                    std::to_string(j) + " (not a polynomial)");
    cp.degree = 0;
    for (const auto& [e, m] : cp.factors) cp.degree += e * m;

    cp.expansion = {Integer(1)};
    for (const auto& [e, m] : cp.factors)
        for (long r = 0; r < m; ++r) cp.expansion = detail::poly_mul_cyclo(cp.expansion, e);
    for (const auto& [e, m] : cp.factors)
        for (long r = 0; r < -m; ++r) cp.expansion = detail::poly_div_cyclo_exact(cp.expansion, e);
    if (static_cast<long>(cp.expansion.size()) - 1 != cp.degree)
        throw std::logic_error("cyclotomic product: degree mismatch after expansion");
    return cp;
}

/// Degree of the restricted polynomial and its roots grouped by cyclotomic
/// index; each multiplicity counts size-2 Jordan blocks at those eigenvalues.
struct JordanSize2Data {
    long degree = 0;
    std::map<long, long> root_multiplicities;  // cyclotomic index -> multiplicity
};

inline JordanSize2Data jordan_size2_data(const GraphLinkSpec& spec) {
    const CycloProduct cp = delta_prime(spec);
    JordanSize2Data out;
    out.degree = cp.degree;
    out.root_multiplicities = detail::cyclotomic_multiplicities(cp.factors);
    long phi_sum = 0;
    for (const auto& [j, m] : out.root_multiplicities) phi_sum += detail::euler_phi(j) * m;
    if (phi_sum != cp.degree) throw std::logic_error("jordan_size2_data: phi degree mismatch");
    return out;
}

enum class TheoremCase { k0, k1, k2, k3_plus };

inline std::string theorem_case_label(TheoremCase c) {
    switch (c) {
        case TheoremCase::k0: return "k=0";
        case TheoremCase::k1: return "k=1";
        case TheoremCase::k2: return "k=2";
        case TheoremCase::k3_plus: return "k>=3";
    }
    return {};
}

struct P2Offsets {
    long p2_plus_minus_b2 = 0;
    long p2_minus_minus_b2 = 0;
    std::optional<TheoremCase> theorem_case;
};

/// Primitive second Betti numbers relative to b2: (1 + deg, deg), plus the
/// coprime-case classification for the 4-node link.
inline P2Offsets p2_offsets(const GraphLinkSpec& spec) {
    const CycloProduct cp = delta_prime(spec);
    P2Offsets out;
    out.p2_plus_minus_b2 = 1 + cp.degree;
    out.p2_minus_minus_b2 = cp.degree;
    if (spec.n == 2 && gcd_int(spec.m1, spec.m2) == 1) {
        long k = 0;
        for (Integer v = abs_int(spec.m1); v != 0 && v % 3 == 0; v /= 3) ++k;
        for (Integer v = abs_int(spec.m2); v != 0 && v % 3 == 0; v /= 3) ++k;
        out.theorem_case = k == 0   ? TheoremCase::k0
                           : k == 1 ? TheoremCase::k1
                           : k == 2 ? TheoremCase::k2
                                    : TheoremCase::k3_plus;
    }
    return out;
}

}  // namespace fibersym
