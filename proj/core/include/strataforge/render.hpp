#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "strataforge/hodge_limits.hpp"

namespace strataforge {

inline constexpr int kSchemaVersion = 1;

struct ConfigIssue {
  std::string field;
  int line = 0, column = 0;  // 1-based; 0 when the position is unknown
  std::string message;
  std::string text() const;
};

// Invalid configuration; lists every problem found, with positions.
struct ConfigError : std::runtime_error {
  std::vector<ConfigIssue> issues;
  explicit ConfigError(std::vector<ConfigIssue> list);
};

// Frames are named by index, by signature, or by "compact" / "split".
struct FrameRef {
  std::string text;
  int line = 0, column = 0;
};

struct FixtureSpec {
  FrameRef frame;
  std::vector<std::string> generators;
  std::optional<std::size_t> expected_order, expected_cosets;
};

struct DottedEdge {
  std::string from, to;
  int line = 0, column = 0;
};

struct LimitSpec {
  FrameRef frame;
  std::string w = "auto";
  std::string n;
  int n_line = 0, n_column = 0;
};

struct RunConfig {
  std::string source = "<config>";
  std::string type;
  std::vector<int> grading;
  std::vector<FixtureSpec> fixtures;
  std::vector<DottedEdge> dotted_edges;
  int search_height = 3;
  std::size_t search_cap = 60000;
  std::size_t weyl_search_cap = 200000;
  std::optional<LimitSpec> limit;
  std::string format = "json";
};

RunConfig parse_config_text(const std::string& text, const std::string& source = "<config>");
RunConfig parse_config_file(const std::string& path);

enum class VertexStyle { solid, crossed, open, undetermined };
std::string to_string(VertexStyle s);

struct StratumClass {
  PolarizabilityReport polarizability;
  CuspidalityReport cuspidality;
  std::optional<DimensionReport> dimensions;  // from the limit built on the witness
  bool witness_consistent = false;            // witness passed the nilpotent-orbit test
};

struct HasseVertex {
  std::size_t record = 0;
  std::string label;
  long rank = 0;  // codimension
  VertexStyle style = VertexStyle::open;
};

struct HasseEdge {
  std::size_t from = 0, to = 0;  // vertex positions
  EdgeKind kind = EdgeKind::cayley;
  bool certified = true, dotted = false;
};

struct EnhancedHasseDiagram {
  std::string title;
  std::vector<HasseVertex> vertices;
  std::vector<HasseEdge> edges;
};

// Result of a limit computation: the flag (frame, w) with W(N) and its naive limit.
struct LimitResult {
  std::size_t frame = 0, w = 0;
  Vec n;
  MixedFlagData mixed;
  NaiveLimit limit;
  std::optional<std::string> polarization_problem;
  std::optional<std::size_t> target_w;  // Weyl element of the naive limit in the same frame
  std::optional<std::size_t> target_orbit;
  std::optional<DimensionReport> dimensions;
  std::optional<CuspidalityReport> target_cuspidality;
  std::string levi_type;  // of the centralizer of the neutral element
};

// Full pipeline for one configuration. Stages run on first use.
class Report {
 public:
  explicit Report(RunConfig cfg);
  Report(const Report&) = delete;
  Report& operator=(const Report&) = delete;

  const RunConfig& config() const { return cfg_; }
  const RealForm& real_form() const { return *rf_; }
  const CartanHasse& hasse() const { return hasse_; }
  const OrbitSpace& orbits();
  const std::vector<StratumClass>& classes();
  EnhancedHasseDiagram diagram();
  LimitResult limit();
  std::size_t resolve_frame(const FrameRef& ref) const;

 private:
  RunConfig cfg_;
  std::unique_ptr<RealForm> rf_;
  CartanHasse hasse_;
  OrbitOptions orbit_opts_;
  std::unique_ptr<OrbitSpace> space_;
  std::optional<std::vector<StratumClass>> classes_;
};

// Parses "X[a,b]" terms with rational coefficients, e.g. "X[-1,0] - 1/2*X[0,-1]".
// Real roots of the frame use the real-normalized vector. Throws std::invalid_argument.
Vec parse_root_combination(const LieAlgebra& la, const CartanFrame& f, const std::string& text);

std::string emit_dot(const EnhancedHasseDiagram& d);
std::string emit_ascii(const EnhancedHasseDiagram& d);
// h^{p,q} on the integer lattice, p to the right and q upward, origin in brackets.
std::string emit_mhd(const DimTable& h);
std::string emit_mhd_dot(const DimTable& h, const std::string& name);

// Subcommand outputs; format is "json", "ascii" or "dot".
std::string render_cartans(Report& r, const std::string& format);
std::string render_orbits(Report& r, const std::string& format);
std::string render_hasse(Report& r, const std::string& format);
std::string render_mhd(Report& r, const std::string& format);
std::string render_classify(Report& r, const std::string& format);
std::string render_limit(Report& r, const std::string& format);

}  // namespace strataforge
