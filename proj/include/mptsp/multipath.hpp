#ifndef MPTSP_MULTIPATH_HPP
#define MPTSP_MULTIPATH_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "mptsp/decomposition.hpp"
#include "mptsp/instance.hpp"
#include "mptsp/lp.hpp"

namespace mptsp {

inline constexpr int kSingleton = -1;

struct SamplerState {
  std::vector<int> chosen;  // path index per commodity, kSingleton if s == t
  std::vector<std::vector<Vertex>> walks;
  std::vector<char> covered;
  int reconnected = 0;

  std::vector<Vertex> pending() const;
};

struct CostReport {
  std::int64_t sampling = 0;
  std::int64_t reconnection = 0;
  std::int64_t parity = 0;
  double lp = 0.0;

  std::int64_t total() const { return sampling + reconnection + parity; }
  double ratio() const { return lp > 0.0 ? static_cast<double>(total()) / lp : 1.0; }
};

// Uniform draw in [0, 1) from the top 53 bits of mt19937_64, so the stream
// is identical across standard libraries.
class UnitSampler {
 public:
  explicit UnitSampler(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// Picks path j of commodity i with probability lambda^i_j. Closed
// commodities get the singleton walk [s_i] and consume no draw.
SamplerState sample_paths(const Instance& inst, const Decomposition& dec,
                          std::uint64_t seed);

// Builds a state from a fixed path choice per commodity.
SamplerState state_from_choice(const Instance& inst, const Decomposition& dec,
                               const std::vector<int>& chosen);

// One attachment of an uncovered vertex to a covered neighbor on some walk.
struct Attachment {
  Vertex vertex;
  Vertex anchor;
  int walk;
};

// Attaches every uncovered vertex in turn: the smallest pending vertex with
// a covered neighbor goes first, to its lowest covered neighbor, on the
// lowest-indexed walk through that neighbor. Updates covered; walks are only
// read.
std::vector<Attachment> plan_attachments(const Graph& g,
                                         const std::vector<std::vector<Vertex>>& walks,
                                         std::vector<char>& covered);

// Doubled-arc reconnection: each pending vertex v is spliced as a detour
// w -> v -> w right after the first occurrence of its anchor w.
SamplerState reconnect(const Instance& inst, SamplerState state);

struct MultipathResult {
  Solution solution;
  CostReport report;
  std::vector<int> chosen;
};

MultipathResult run_multipath(const Instance& inst, const LpResult& lp,
                              const Decomposition& dec, std::uint64_t seed);
MultipathResult solve_randomized(const Instance& inst, std::uint64_t seed);

// Values of the conditional-expectation potential.
struct DerandomizationTrace {
  double initial = 0.0;               // before any path is fixed
  std::vector<double> after_fixing;   // minimum after fixing each commodity
  std::vector<std::vector<double>> candidates;  // per commodity, per path
};

// Conditional expectation of the total cost given the paths fixed so far.
// Chooses, commodity by commodity, the path minimizing the potential.
MultipathResult run_derandomized(const Instance& inst, const LpResult& lp,
                                 const Decomposition& dec,
                                 DerandomizationTrace* trace = nullptr);
MultipathResult solve_derandomized(const Instance& inst,
                                   DerandomizationTrace* trace = nullptr);

// Undirected cost of the walks (sum of lengths).
std::int64_t walks_cost(const std::vector<std::vector<Vertex>>& walks);

}  // namespace mptsp

#endif  // MPTSP_MULTIPATH_HPP
