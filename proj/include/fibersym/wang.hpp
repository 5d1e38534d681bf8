#pragma once

#include "fibersym/jordan.hpp"
#include "fibersym/surfaces.hpp"

#include <array>
#include <optional>

namespace fibersym {

/// Product of a circle with the mapping torus of a punctured-surface
/// diffeomorphism, described by the dual action fstar on H1 of the fiber.
struct FiberedFourManifold {
    SurfaceModel surface;
    MatrixQ fstar;

    FiberedFourManifold(const SurfaceModel& s, MatrixQ f) : surface(s), fstar(std::move(f)) {
        if (surface.punctures < 1)
            throw std::invalid_argument("FiberedFourManifold: fiber must be punctured");
        if (fstar.rows() != fstar.cols() || fstar.rows() != surface.h1_rank)
            throw std::invalid_argument("FiberedFourManifold: fstar has wrong shape");
        if (rank_exact(fstar) != surface.h1_rank)
            throw std::invalid_argument("FiberedFourManifold: fstar must be invertible");
    }
};

/// Deformation class of the product symplectic form, described by the
/// coefficients lambda_i of its mixed-degree part in a chain-adapted basis.
/// Chains are indexed in census order: sizes ascending, so the s chains of
/// size 1 come first.
struct EtaClass {
    std::vector<Rational> lambdas;
    std::vector<Eigen::Index> jordan_sizes;  // per-chain sizes, size-1 chains first
};

struct BettiReport {
    std::array<Eigen::Index, 5> b{};        // b0..b4 of the 4-manifold
    std::array<Eigen::Index, 4> bY{};       // b0..b3 of the mapping torus
    std::array<Eigen::Index, 3> p_plus{};   // p0+, p1+, p2+
    std::array<Eigen::Index, 3> p_minus{};  // p0-, p1-, p2-
    Eigen::Index nu2 = 0;
    Eigen::Index chi_p = 0;  // 2 - b1 + b3, a homeomorphism invariant
};

/// Betti numbers of the mapping torus: (1, dim ker(f*-1) + 1, dim coker(f*-1), 0).
inline std::array<Eigen::Index, 4> mapping_torus_betti(const MatrixQ& fstar) {
    if (fstar.rows() != fstar.cols())
        throw std::invalid_argument("mapping_torus_betti: matrix not square");
    const Eigen::Index n = fstar.rows();
    const Eigen::Index r = rank_exact(fstar - MatrixQ::Identity(n, n));
    const Eigen::Index ker = n - r;
    const Eigen::Index coker = n - r;
    return {1, ker + 1, coker, 0};
}

/// Betti numbers of the circle-times-mapping-torus product.
inline std::array<Eigen::Index, 5> product_betti(const MatrixQ& fstar) {
    auto bY = mapping_torus_betti(fstar);
    const Eigen::Index ker = bY[1] - 1;
    const Eigen::Index coker = bY[2];
    return {1, 2 + ker, 1 + coker + ker, coker, 0};
}

/// Chain sizes in census order (ascending), one entry per Jordan chain at the
/// given census's eigenvalue.
inline std::vector<Eigen::Index> chain_sizes(const JordanCensus& census) {
    std::vector<Eigen::Index> sizes;
    for (const auto& [size, count] : census.blocks_of_size)
        for (Eigen::Index c = 0; c < count; ++c) sizes.push_back(size);
    return sizes;
}

/// Primitive Betti numbers of the product, for the reference symplectic class
/// (eta absent) or a deformed class with the given lambda coefficients.
inline BettiReport primitive_betti(const FiberedFourManifold& m,
                                   const std::optional<EtaClass>& eta = std::nullopt) {
    const Eigen::Index n = m.fstar.rows();
    const JordanCensus census = jordan_census(m.fstar - MatrixQ::Identity(n, n), Rational(0));

    BettiReport report;
    report.b = product_betti(m.fstar);
    report.bY = mapping_torus_betti(m.fstar);
    report.nu2 = census.nu2;
    report.chi_p = 2 - report.b[1] + report.b[3];

    const Eigen::Index b2 = report.b[2];
    const auto sizes = chain_sizes(census);
    const Eigen::Index k = static_cast<Eigen::Index>(sizes.size());

    Eigen::Index p2p = 0, p2m = 0;
    if (!eta) {
        p2p = b2 + 1 + census.nu2;
        p2m = b2 + census.nu2;
    } else {
        if (static_cast<Eigen::Index>(eta->lambdas.size()) != k)
            throw std::invalid_argument("primitive_betti: eta length must equal dim ker(f*-1)");
        Eigen::Index s = 0;
        while (s < k && sizes[static_cast<std::size_t>(s)] == 1) ++s;
        bool deformed = false;
        for (Eigen::Index i = s; i < k; ++i)
            if (eta->lambdas[static_cast<std::size_t>(i)] != 0) deformed = true;
        if (deformed) {
            p2p = (b2 - 1) + 1 + (k - s);
            p2m = b2 + (k - s) - 1;
        } else {
            p2p = (b2 - 1) + 2 + (k - s);
            p2m = b2 + (k - s);
        }
    }
    report.p_plus = {1, report.b[1], p2p};
    report.p_minus = {0, report.b[3], p2m};
    return report;
}

/// Builds the eta class for a manifold from lambda coefficients in census
/// order, validating the length against dim ker(f*-1).
inline EtaClass make_eta(const FiberedFourManifold& m, std::vector<Rational> lambdas) {
    const Eigen::Index n = m.fstar.rows();
    const JordanCensus census = jordan_census(m.fstar - MatrixQ::Identity(n, n), Rational(0));
    EtaClass eta{std::move(lambdas), chain_sizes(census)};
    if (eta.lambdas.size() != eta.jordan_sizes.size())
        throw std::invalid_argument("make_eta: lambda length must equal dim ker(f*-1)");
    return eta;
}

/// True iff the monodromy acts trivially on cohomology, in which case the
/// report coincides with the trivial-product model over the same fiber.
inline bool torelli_product_check(const FiberedFourManifold& m) {
    return m.fstar == MatrixQ::Identity(m.fstar.rows(), m.fstar.cols());
}

}  // namespace fibersym
