#pragma once

// Encoders from combinatorial problems to power networks, with the value each
// encoding reaches exactly when the source instance is solvable, plus the
// matching certificate decoders.

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ldcflow/mff.hpp"
#include "ldcflow/msf.hpp"
#include "ldcflow/network.hpp"

namespace ldc {

struct ExactCover3Instance {
  std::vector<std::string> universe;
  std::vector<std::array<std::string, 3>> sets;
};

struct SubsetSumInstance {
  std::vector<long> values;
  long target = 0;
};

struct HamiltonianInstance {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  std::string from;
  std::string to;
};

enum class ReductionKind {
  ExactCoverMff,
  ExactCoverMsf,
  Hamiltonian,
  SubsetSumCactusMsf,
  SubsetSumCactusMff,
  SubsetSumTree,
};

/// "exact-cover-mff", "exact-cover-msf", "hamiltonian", "subset-sum-cactus-msf",
/// "subset-sum-cactus-mff", "subset-sum-tree".
const char* to_string(ReductionKind kind);
ReductionKind parse_reduction_kind(std::string_view text);

/// Solved by MFF search (true) or by MSF (false).
bool uses_facts(ReductionKind kind);

struct EncodedInstance {
  Network network;
  Rational predicted_value;
  ReductionKind kind;
};

/// Throw InvalidInstance on malformed input.
void validate(const ExactCover3Instance& inst);
void validate(const SubsetSumInstance& inst);
void validate(const HamiltonianInstance& inst);

/// Glue: generator g, load l, a port per set ("S<i>") and a node per element
/// ("m:<symbol>"); g-l (1, 3), set-element (1, 1), g-element (1, 1),
/// element-l (1, 2). Set i gets a gadget of size 3 on its port with prefix "X<i>.".
/// Predicted 3 + 183/10 |S| + |M| with FACTS gadgets, 3 + 9 |S| + |M| with
/// switching gadgets.
EncodedInstance encode_exact_cover_mff(const ExactCover3Instance& inst);
EncodedInstance encode_exact_cover_msf(const ExactCover3Instance& inst);

/// Graph edges (1, 1), a source "$v0" (generator) joined to `from`, a sink
/// "$v<n+1>" (load) joined to `to`, and a parallel chain "$v0", "$v1'", ...,
/// "$v<n>'", "$v<n+1>" of (1, 1) edges. Predicted 2.
EncodedInstance encode_hamiltonian(const HamiltonianInstance& inst);

/// Glue on g, l and ports "v1".."v<n>": g-l (1, 2 + w), g-v1 (1, 1),
/// v1-l (1, w + 1), v<i>-v<i+1> (1, w); value i gets a gadget of that size on
/// "v<i>" with prefix "X<i>.". Predicted 3 + w + 3m with switching gadgets,
/// 3 + w + 61m/10 with FACTS gadgets, where m is the sum of the values.
EncodedInstance encode_subset_sum_cactus_msf(const SubsetSumInstance& inst);
EncodedInstance encode_subset_sum_cactus_mff(const SubsetSumInstance& inst);

/// Two-level tree. With values a_2..a_n in input order and m + 1 their sum:
/// g-g1 (2m+2, m+1), g1-a1 (2m+2, m+1), a1-l1 (1, 1), g-p (w, w),
/// g-g<n+1> (2/(n+1), 1), g<n+1>-a<n+1> (2/(n+1), 1), a<n+1>-l<n+1> (1, m+1),
/// p-a<i> (a_i/(i-1), a_i) and a<i>-l<i> (1, a_i) for 2 <= i <= n, and the chain
/// a<i>-a<i+1> (m, m) for 1 <= i <= n (omitted when m = 0). Generator g; loads
/// l1..l<n+1>. Predicted m + 2 + w.
EncodedInstance encode_subset_sum_tree(const SubsetSumInstance& inst);

EncodedInstance encode(ReductionKind kind, const ExactCover3Instance& inst);
EncodedInstance encode(ReductionKind kind, const SubsetSumInstance& inst);

/// Switch set and solution reaching the predicted value of the tree encoding
/// from a subset summing to the target. NotACertificate if `chosen` is not a
/// sub-multiset of the values or does not sum to the target.
std::pair<SwitchSet, Solution> witness_tree(const SubsetSumInstance& inst, const std::vector<long>& chosen);

/// Subset read off an optimal solution: for cactus encodings the values whose
/// gadget feeds exactly its size into the glue, for the tree encoding the
/// values whose p-a<i> edge stays in service. NotOptimal below the predicted
/// value; DecodingFailed if the subset misses the target.
std::vector<long> decode_subset_sum(const MsfOutcome& outcome, const SubsetSumInstance& inst, ReductionKind kind);
std::vector<long> decode_subset_sum(const MffOutcome& outcome, const SubsetSumInstance& inst, ReductionKind kind);

/// Indices of the sets whose port sends 1 to each of its three elements.
/// NotOptimal below the predicted value; DecodingFailed unless they form an
/// exact cover.
std::vector<std::size_t> decode_exact_cover(const MffOutcome& outcome, const ExactCover3Instance& inst);
std::vector<std::size_t> decode_exact_cover(const MsfOutcome& outcome, const ExactCover3Instance& inst);

}  // namespace ldc
