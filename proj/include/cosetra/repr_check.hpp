#pragma once

#include "cosetra/coset_builder.hpp"

namespace cosetra {

// A bijection between the atoms of two structures, extended to elements by
// atomwise image.
struct AtomBijection {
  StructurePtr source;
  StructurePtr target;
  std::vector<int> map;  // source atom -> target atom

  Element image(const Element& e) const;
};

AtomBijection make_atom_bijection(StructurePtr source, StructurePtr target,
                                  std::vector<int> map);

struct PeirceanReport {
  bool pass = true;
  std::string kind;             // "composition", "converse", "identity"
  std::vector<int> witness;     // source atom indices
};

// The atom-level preservation conditions: c <= a;b iff the images compose
// accordingly, c <= a^ iff the images do, c <= 1' iff the image is under the
// target identity. Exhaustive over all atom triples.
PeirceanReport verify_peircean(const AtomBijection& theta);

struct IsoCheckOptions {
  int exhaustive_threshold = 12;
  std::uint64_t seed = 0x5eedc0de5eedc0deull;
  std::uint64_t sample_pairs = 1000;
};

struct IsoReport {
  bool pass = true;
  bool exhaustive = true;
  std::uint64_t pairs_checked = 0;
  std::string kind;
  std::vector<Mask> witness;  // source element masks
};

// Confirms that the atomwise extension preserves join, complement,
// composition, converse and identity: exhaustively over all element pairs up
// to the threshold, otherwise over all atoms, all rectangles, and a
// fixed-seed sample of element pairs.
IsoReport verify_isomorphism(const AtomBijection& theta,
                             const IsoCheckOptions& options = {});

struct RoundtripReport {
  bool pass = false;
  std::string failed_stage;  // empty when pass
  SemiScaffold scaffold;
  GroupTriple triple;
  BuiltAlgebra built;
  AtomBijection theta;
  PeirceanReport peircean;
  IsoReport iso;
};

// The full pipeline on a measurable algebra: semi-scaffold, triple
// extraction, synthesis of the coset algebra, atom bijection, Peircean and
// isomorphism verification.
RoundtripReport roundtrip(StructurePtr a, const IsoCheckOptions& options = {},
                          const std::vector<int>& order = {});

enum class Representability { GroupRepresentable, CosetOnly, NotMeasurable };

struct RepresentabilityVerdict {
  Representability kind = Representability::NotMeasurable;
  std::optional<SemiScaffold> scaffold;
  ScaffoldSearchStats search;
  std::optional<GroupTriple> triple;
  // The synthesized witness algebra: a group algebra with set-composition
  // validated relations for GroupRepresentable, the coset algebra otherwise.
  std::optional<BuiltAlgebra> witness;
  std::optional<AtomBijection> theta;
};

// Decides representability of a finite algebra that passes the axioms: not
// measurable, or group-representable via a scaffold (with a validated
// set-relation witness), or representable only as a coset algebra (after the
// exhaustive scaffold search fails).
RepresentabilityVerdict decide_representable(StructurePtr a,
                                             const IsoCheckOptions& options = {},
                                             const std::vector<int>& order = {});

std::string render_verdict(const AtomStructure& a,
                           const RepresentabilityVerdict& v);

}  // namespace cosetra
