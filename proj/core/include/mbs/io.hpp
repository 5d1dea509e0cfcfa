#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "mbs/canonical.hpp"
#include "mbs/homology.hpp"
#include "mbs/minors.hpp"
#include "mbs/moves.hpp"
#include "mbs/search.hpp"
#include "mbs/surface.hpp"

namespace mbs {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kFormatTag = "mbs/1";

/// Rejected "mbs/1" document. `line` and `column` are 1-based positions in
/// the input text (0 when unknown); `path` is a JSON pointer to the
/// offending value; `rule` names the violated rule ("syntax", "type",
/// "required", "unknown-field", "format", "mode", "minimum",
/// "duplicate-id", "duplicate-circle", "duplicate-slot", "non-empty").
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string rule, std::string path, int line, int column, const std::string& message);

  const std::string& rule() const { return rule_; }
  const std::string& path() const { return path_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string rule_;
  std::string path_;
  int line_;
  int column_;
};

/// Parses an "mbs/1" document. Only the document schema is checked here;
/// run `validate` for the surface rules. Throws SchemaError.
MultibranchedSurface parse_surface(std::string_view text);

/// Keys in order: format, mode, regions {id, orientable, genus, boundaries},
/// loci {id, wrapping, slots}. Two-space indentation and a trailing newline.
/// Slot order is written verbatim.
std::string serialize_surface(const MultibranchedSurface& surface);
Json surface_to_json(const MultibranchedSurface& surface);

/// Sixteen lowercase hex digits.
std::string hash_hex(std::uint64_t hash);

Json to_json(const Move& move);
Json to_json(const MoveRecord& record);
Json to_json(const ReductionStep& step);
Json to_json(const HomologyGroup& group);
Json to_json(const HomologyProfile& profile);
Json to_json(const IsoCertificate& cert);
Json to_json(const Violation& violation);
Json to_json(const ObstructionFlags& flags);
Json to_json(const DecompositionSummary& summary);

/// Inverses of the move and record encoders; throw SchemaError on malformed
/// input (line and column are 0).
Move move_from_json(const nlohmann::json& json);
MoveRecord record_from_json(const nlohmann::json& json);

/// Region-locus incidence graph in Graphviz syntax. One edge per attached
/// circle, labelled with the circle id and slot index.
std::string to_dot(const MultibranchedSurface& surface);

}  // namespace mbs
