#pragma once

#include <functional>

#include "bgkpml/grid.hpp"

namespace bgkpml {

enum class Parity { even, odd };

// ---------------------------------------------------------------------------
// Ghost handling.
//
// Wall edges are realized by mirror extension about the boundary node: even
// fields copy the interior values into the ghosts, odd fields reflect the
// deviation from the boundary trace, 2 f(wall) - f(mirror). For data whose
// momentum trace vanishes at the wall this is the plain antisymmetric
// extension that blocks the mass flux; when the initial data carries
// momentum at a wall (vortex inflow) it stays jump-free instead of forcing
// a discontinuity there. Periodic edges wrap with period nx (resp. ny),
// i.e. the grid is read as one period of an nx*h-periodic lattice.
// ---------------------------------------------------------------------------

void fill_ghosts(Field& f, const BoundarySpec& bc, Parity px, Parity py);

/// Parity of state component k (0..5 = a1..a6, 6..11 = auxiliary fields)
/// under reflection at an x-wall: the normal momentum a2 and the shear
/// coefficient a4 flip, everything else extends evenly.
Parity wall_parity_x(int component);
/// Same for y-walls; a3 and a4 flip.
Parity wall_parity_y(int component);

/// Fills the ghost frame of every component of a state according to the
/// component parities above. Auxiliary fields extend evenly.
void apply_wall_bc(FieldSet& state, const BoundarySpec& bc);

// ---------------------------------------------------------------------------
// Fourth-order first derivatives.
// ---------------------------------------------------------------------------

/// Central 5-point derivative reading ghost cells; the caller must have
/// filled the ghost frame (apply_wall_bc / fill_ghosts).
void ddx_central(const Field& f, double hx, Field& out);
void ddy_central(const Field& f, double hy, Field& out);

/// Self-contained derivative: central stencil in the interior, 4th-order
/// one-sided and biased stencils at the two points next to a wall (or
/// pml_backed) edge, index wrapping at periodic edges. Does not touch or
/// read ghost cells.
void ddx(const Field& f, const GridSpec& g, const BoundarySpec& bc, Field& out);
void ddy(const Field& f, const GridSpec& g, const BoundarySpec& bc, Field& out);

Field ddx(const Field& f, const GridSpec& g, const BoundarySpec& bc);
Field ddy(const Field& f, const GridSpec& g, const BoundarySpec& bc);

using DerivOp = std::function<void(const Field&, Field&)>;

}  // namespace bgkpml
