#pragma once

#include <optional>
#include <vector>

#include "chipopt/architecture.hpp"
#include "chipopt/grid_placement.hpp"  // MutationMode, kRetryCap
#include "chipopt/rng.hpp"
#include "chipopt/topology.hpp"

namespace chipopt {

// Placement genome for arbitrarily shaped chiplets: the order in which the
// deterministic placer inserts them plus one rotation per position. The
// canonical identity of a genome is its type sequence; two genomes with the
// same type and rotation sequences decode to the same geometry. Rotations
// travel with their chiplet when positions are swapped and always stay
// inside the chiplet's allowed set (Invariant -> {R0}, Hybrid -> {R0, R90},
// Sensitive -> all four).
struct Genome {
  std::vector<std::size_t> order;      // permutation of instance ids
  std::vector<Rotation> rotations;     // by order position

  friend bool operator==(const Genome&, const Genome&) = default;
};

// Deterministic bottom-left style decoder. Chiplets are inserted one by one:
// the candidate anchors are the concave corners of the current rectangle
// union plus the two axis-anchored points (max_x, 0) and (0, max_y); the
// anchor minimizing the side of the minimal enclosing square of the
// tentative union wins, ties broken by (lower y, lower x). Overlaps of the
// chosen tentative position are then resolved by moving up past conflicts
// entering from the right and right past conflicts from above. Never fails;
// the layout has pairwise disjoint interiors and non-negative origins.
Layout decode_genome(const Architecture& arch, const Genome& genome);

// Uniform genome without the connectivity check; building block for tests.
Genome random_genome_raw(const Architecture& arch, Rng& rng);

struct HeteroCandidate {
  Genome genome;
  Layout layout;
  IciTopology topology;
};

HeteroCandidate random_hetero_candidate(const Architecture& arch, Rng& rng);
HeteroCandidate mutate_hetero(const Architecture& arch, const Genome& g, MutationMode mode,
                              Rng& rng);
HeteroCandidate merge_hetero(const Architecture& arch, const Genome& x, const Genome& y,
                             Rng& rng);

// Infers the interconnect from the geometry: a graph over PHYs with
// zero-weight internal edges inside relay-capable chiplets and candidate
// edges between PHYs of different chiplets no farther apart than the link
// length bound, weighted by distance. The minimum spanning tree's candidate
// edges become D2D links, then remaining candidate edges are added greedily
// by weight wherever both endpoint PHYs are still free. Returns nullopt when
// some chiplet cannot be reached (the creating operation is repeated) or
// when no port-valid tree of minimum weight exists.
std::optional<IciTopology> infer_topology(const Architecture& arch, const Layout& layout);

// Weight of the spanning-tree stage alone (sum of MST candidate edges), for
// the oracle comparison in tests. Same contract as infer_topology.
std::optional<double> infer_mst_weight(const Architecture& arch, const Layout& layout);

}  // namespace chipopt
