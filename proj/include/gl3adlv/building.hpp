#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gl3adlv/cartan.hpp"

namespace gl3 {

/// Relative position of two chambers sharing a vertex, seen in the residue:
/// gallery distance 3 is I; the two distance-2 cases split into II and III by
/// whether the designated vertex of the first chamber lies on the common edge
/// with the intermediate chamber (on-edge -> III, off-edge -> II).
enum class LinkPos { I, II, III, Deg0, Deg1 };

std::string to_string(LinkPos p);

struct Chamber {
  std::array<Vertex, 3> v;
  bool contains(const Vertex& x) const;
};

/// True iff representatives can be ordered into a chain
/// L0 > L1 > L2 > t L0 with successive codimension one.
bool is_chamber(const Vertex& a, const Vertex& b, const Vertex& c);

/// Validating constructor; throws std::invalid_argument.
Chamber make_chamber(const Vertex& a, const Vertex& b, const Vertex& c);

/// The fundamental chamber {[Lambda], [tO+O+O], [tO+tO+O]}.
Chamber main_chamber(const FieldCtx& F);

/// Convex-projection vertex: the unique vertex in Gr_mu(Q) lying in cl(Q, P).
/// Requires inv(Q,P) minus a representative of mu to be dominant.
Vertex project(const Vertex& Q, const Vertex& P, const CochClass& mu);

struct FirstChamberResult {
  bool is_chamber; // false when cl(Q,P) degenerates to a line segment
  std::optional<Chamber> chamber;
  Vertex first_vertex; // the vertex adjacent to Q along cl(Q, P)
};

/// First chamber (or first vertex, in the segment case) of cl(Q, P).
FirstChamberResult first_chamber(const Vertex& Q, const Vertex& P);

/// Relative position of chambers c1, c2 at their common vertex p.
LinkPos chamber_relpos(const Chamber& c1, const Chamber& c2, const Vertex& p);

/// Composition of relative positions along a shared base vertex:
/// given e = inv'(P0,P1), f = inv'(P0,P2) and the position of the two first
/// chambers, returns inv'(P1,P2) for bend parameter j.
/// Position I takes j = 0 only.  For II, j ranges over [min(1,m), m] with
/// m = min{e1-e2, f2-f3}; for III over the same range with
/// m = min{f1-f2, e2-e3}.
CochClass kottwitz_compose(const CochClass& e, const CochClass& f, LinkPos pos,
                           int j);

/// All values kottwitz_compose can take as j varies.
std::vector<CochClass> predict_inv_set(const CochClass& e, const CochClass& f,
                                       LinkPos pos);

/// Bend bound m for the given position (0 for position I).
int kottwitz_bound(const CochClass& e, const CochClass& f, LinkPos pos);

} // namespace gl3
