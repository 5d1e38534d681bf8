#pragma once

#include "fibersym/eps.hpp"

#include <array>
#include <algorithm>
#include <cstdlib>
#include <vector>

namespace fibersym {

/// Fiber frame for the torus fibration along v1 = (a1, a2, a3), with
/// v2 = (1,1,0) and v3 = (0,1,1) fixed. Degenerate when A = a1 - a2 + a3 = 0.
struct FibrationFrame {
    long a1 = 0, a2 = 0, a3 = 0;
    long det() const { return a1 - a2 + a3; }
};

struct EpsPoint {
    EpsNumber x, y;
};

struct PuncturePath {
    int label = 0;  // 1..4 in order of increasing start x-coordinate
    EpsPoint start;
    std::array<long, 2> velocity{};

    EpsPoint at(const EpsNumber& t) const {
        return {start.x + Rational(velocity[0]) * t, start.y + Rational(velocity[1]) * t};
    }
};

enum class Relation { above, below, through_start };

struct RelativeLocation {
    int mover = 0;
    int anchor = 0;
    Relation relation = Relation::above;
    EpsNumber time;  // x-coincidence time in (0,1)
};

struct CrossingEvent {
    int i = 0, j = 0;         // strand pair, i < j
    EpsNumber t_i, t_j;       // per-strand times in [0,1); never equal
    int over = 0;             // label of the strand with the later time
    EpsNumber event_time;     // max(t_i, t_j)
    bool start_incidence = false;
    bool coincident_duplicate = false;
};

struct CrossingTable {
    std::vector<CrossingEvent> rows;              // ordered by (event_time, pair, times)
    std::vector<CrossingEvent> start_incidences;  // events with a time exactly 0
};

/// Puncture paths in the fiber for the frame, in order of start x-coordinate.
/// Starts are fixed eps-multiples; velocities are integer.
inline std::array<PuncturePath, 4> puncture_paths(const FibrationFrame& frame) {
    if (frame.det() == 0)
        throw std::domain_error("puncture_paths: degenerate basis (a1 - a2 + a3 = 0)");
    const long a1 = frame.a1, a2 = frame.a2, a3 = frame.a3;
    const EpsNumber e = EpsNumber::eps();
    std::array<PuncturePath, 4> paths = {
        PuncturePath{1, {Rational(-4) * e, Rational(3) * e}, {a3 - a2, -a3}},
        PuncturePath{2, {Rational(-1) * e, Rational(2) * e}, {-a1, a1 - a2}},
        PuncturePath{3, {EpsNumber(), EpsNumber()}, {a3 - a2, a1 - a2}},
        PuncturePath{4, {e, Rational(-3) * e}, {-a1, -a3}},
    };

    // Each path must satisfy the 2x2 displacement system it was solved from.
    const EpsNumber t = EpsNumber::eps(2);  // generic probe value
    auto check = [](const EpsNumber& lhs, const EpsNumber& rhs) {
        if (!(lhs == rhs)) throw std::logic_error("puncture_paths: system check failed");
    };
    auto p1 = paths[0].at(t), p2 = paths[1].at(t), p3 = paths[2].at(t), p4 = paths[3].at(t);
    check(p1.x + p1.y, Rational(-1) * EpsNumber::eps() - Rational(a2) * t);
    check(p1.y, Rational(3) * EpsNumber::eps() - Rational(a3) * t);
    check(p2.x, Rational(-1) * EpsNumber::eps() - Rational(a1) * t);
    check(p2.x + p2.y, EpsNumber::eps() - Rational(a2) * t);
    check(EpsNumber() - p3.y, Rational(a2 - a1) * t);
    check(p3.x - p3.y, Rational(a3 - a1) * t);
    check(p4.x, EpsNumber::eps() - Rational(a1) * t);
    check(p4.y, Rational(-3) * EpsNumber::eps() - Rational(a3) * t);
    return paths;
}

namespace detail {

inline long box_radius(const PuncturePath& a, const PuncturePath& b) {
    auto norm = [](const PuncturePath& p) {
        return std::max(std::labs(p.velocity[0]), std::labs(p.velocity[1]));
    };
    return norm(a) + norm(b) + 1;
}

inline bool in_unit_interval(const EpsNumber& t) {
    return !(t < EpsNumber()) && t < EpsNumber(1);
}

}  // namespace detail

/// True iff no two strands occupy the same fiber point at the same time,
/// for any lattice offset.
inline bool verify_disjoint_strands(const std::array<PuncturePath, 4>& paths) {
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const auto& pi = paths[i];
            const auto& pj = paths[j];
            const long wx = pi.velocity[0] - pj.velocity[0];
            const long wy = pi.velocity[1] - pj.velocity[1];
            const long box = detail::box_radius(pi, pj);
            for (long p = -box; p <= box; ++p) {
                for (long q = -box; q <= box; ++q) {
                    const EpsNumber rx = pj.start.x - pi.start.x + Rational(p);
                    const EpsNumber ry = pj.start.y - pi.start.y + Rational(q);
                    if (wx == 0 && wy == 0) {
                        if (rx.is_zero() && ry.is_zero()) return false;
                        continue;
                    }
                    // solve (wx, wy) * t = (rx, ry)
                    EpsNumber t = wx != 0 ? rx.div(Rational(wx)) : ry.div(Rational(wy));
                    if (!(Rational(wx) * t == rx) || !(Rational(wy) * t == ry)) continue;
                    if (detail::in_unit_interval(t)) return false;
                }
            }
        }
    }
    return true;
}

/// For every ordered pair (mover, anchor), the times in (0,1) where the mover
/// passes the anchor's start point: through it exactly, or infinitesimally
/// above/below it. Far passes (second coordinate off by a noninfinitesimal
/// amount mod 1) are not relations.
inline std::vector<RelativeLocation> relative_locations(const std::array<PuncturePath, 4>& paths) {
    std::vector<RelativeLocation> out;
    for (const auto& mover : paths) {
        for (const auto& anchor : paths) {
            if (mover.label == anchor.label) continue;
            const long vx = mover.velocity[0];
            if (vx == 0) continue;  // never meets another start's x-line (distinct eps shifts)
            for (long p = -std::labs(vx) - 1; p <= std::labs(vx) + 1; ++p) {
                const EpsNumber t = (anchor.start.x - mover.start.x + Rational(p)).div(Rational(vx));
                if (!(EpsNumber() < t) || !(t < EpsNumber(1))) continue;
                const EpsNumber diff = (mover.at(t).y - anchor.start.y).centered_mod1();
                RelativeLocation rel{mover.label, anchor.label, Relation::above, t};
                if (diff.is_zero())
                    rel.relation = Relation::through_start;
                else if (diff.is_infinitesimal())
                    rel.relation = EpsNumber() < diff ? Relation::above : Relation::below;
                else
                    continue;
                out.push_back(rel);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const RelativeLocation& a, const RelativeLocation& b) {
        if (a.mover != b.mover) return a.mover < b.mover;
        if (a.anchor != b.anchor) return a.anchor < b.anchor;
        return a.time < b.time;
    });
    return out;
}

/// All pairwise crossings over one period, solved exactly over Q(eps).
/// Events with a strand time exactly 0 are set aside as start incidences;
/// repeated passes of one strand through the same fiber point at the same
/// event time collapse to a single flagged row.
inline CrossingTable crossing_table(const std::array<PuncturePath, 4>& paths) {
    std::vector<CrossingEvent> events;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const auto& pi = paths[i];
            const auto& pj = paths[j];
            const long vix = pi.velocity[0], viy = pi.velocity[1];
            const long vjx = pj.velocity[0], vjy = pj.velocity[1];
            const long det = vjx * viy - vix * vjy;
            const long box = detail::box_radius(pi, pj) + 1;  // enlarged; see assertion below
            for (long p = -box; p <= box; ++p) {
                for (long q = -box; q <= box; ++q) {
                    const EpsNumber rx = pj.start.x - pi.start.x + Rational(p);
                    const EpsNumber ry = pj.start.y - pi.start.y + Rational(q);
                    if (det == 0) {
                        const bool zi = vix == 0 && viy == 0;
                        const long wx = zi ? vjx : vix;
                        const long wy = zi ? vjy : viy;
                        if (wx == 0 && wy == 0) {
                            if (rx.is_zero() && ry.is_zero())
                                throw std::domain_error("crossing_table: coincident constant strands");
                            continue;
                        }
                        if (Rational(wx) * ry == Rational(wy) * rx)
                            throw std::domain_error(
                                "crossing_table: degenerate geometry (a solution line, not a point)");
                        continue;
                    }
                    // Cramer on v_i t_i - v_j t_j = r
                    const EpsNumber ti =
                        (Rational(vjx) * ry - Rational(vjy) * rx).div(Rational(det));
                    const EpsNumber tj =
                        (Rational(vix) * ry - Rational(viy) * rx).div(Rational(det));
                    if (!detail::in_unit_interval(ti) || !detail::in_unit_interval(tj)) continue;
                    if (ti == tj) throw std::domain_error("crossing_table: equal-time collision");
                    if (std::max(std::labs(p), std::labs(q)) >= box)
                        throw std::logic_error("crossing_table: offset box too small");
                    CrossingEvent ev;
                    ev.i = pi.label;
                    ev.j = pj.label;
                    ev.t_i = ti;
                    ev.t_j = tj;
                    ev.over = tj < ti ? pi.label : pj.label;
                    ev.event_time = tj < ti ? ti : tj;
                    ev.start_incidence = ti.is_zero() || tj.is_zero();
                    events.push_back(ev);
                }
            }
        }
    }

    auto times_less = [](const CrossingEvent& a, const CrossingEvent& b) {
        if (a.event_time != b.event_time) return a.event_time < b.event_time;
        if (a.i != b.i) return a.i < b.i;
        if (a.j != b.j) return a.j < b.j;
        if (a.t_i != b.t_i) return a.t_i < b.t_i;
        return a.t_j < b.t_j;
    };
    std::sort(events.begin(), events.end(), times_less);

    CrossingTable table;
    for (const auto& ev : events) {
        if (ev.start_incidence) {
            table.start_incidences.push_back(ev);
            continue;
        }
        // collapse: same pair, same fiber point, same event time
        bool duplicate = false;
        for (auto& row : table.rows) {
            if (row.i != ev.i || row.j != ev.j || row.event_time != ev.event_time) continue;
            const auto a = paths[static_cast<std::size_t>(ev.i - 1)].at(ev.t_i);
            const auto b = paths[static_cast<std::size_t>(row.i - 1)].at(row.t_i);
            if (a.x.mod1() == b.x.mod1() && a.y.mod1() == b.y.mod1()) {
                row.coincident_duplicate = true;
                duplicate = true;
                break;
            }
        }
        if (!duplicate) table.rows.push_back(ev);
    }
    return table;
}

}  // namespace fibersym
