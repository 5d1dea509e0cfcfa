#include "mbs/io.hpp"

#include <charconv>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_set>

namespace mbs {

SchemaError::SchemaError(std::string rule, std::string path, int line, int column, const std::string& message)
    : std::runtime_error(message), rule_(std::move(rule)), path_(std::move(path)), line_(line), column_(column) {}

namespace {

// Finds where the value at a JSON pointer starts in text that is already
// known to be well-formed JSON.
class Locator {
 public:
  explicit Locator(std::string_view text) : s_(text) {}

  std::optional<std::size_t> find(const nlohmann::json::json_pointer& pointer) {
    std::vector<std::string> tokens;
    for (auto p = pointer; !p.empty(); p = p.parent_pointer()) tokens.insert(tokens.begin(), p.back());
    i_ = 0;
    ws();
    for (const auto& token : tokens) {
      if (i_ >= s_.size()) return std::nullopt;
      if (s_[i_] == '{') {
        if (!enter_member(token)) return std::nullopt;
      } else if (s_[i_] == '[') {
        if (!enter_element(token)) return std::nullopt;
      } else {
        return std::nullopt;
      }
    }
    return i_;
  }

 private:
  void ws() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\n' || s_[i_] == '\r' || s_[i_] == '\t')) ++i_;
  }

  std::string read_string() {
    std::string out;
    ++i_;  // opening quote
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\' && i_ + 1 < s_.size()) {
        ++i_;
        switch (s_[i_]) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'r': out += '\r'; break;
          case 'b': out += '\b'; break;
          case 'f': out += '\f'; break;
          case 'u': out += "\\u"; break;  // keys with \u escapes are not matched exactly
          default: out += s_[i_];
        }
      } else {
        out += s_[i_];
      }
      ++i_;
    }
    ++i_;  // closing quote
    return out;
  }

  void skip_value() {
    ws();
    if (i_ >= s_.size()) return;
    const char c = s_[i_];
    if (c == '"') {
      read_string();
    } else if (c == '{' || c == '[') {
      const char close = c == '{' ? '}' : ']';
      ++i_;
      ws();
      while (i_ < s_.size() && s_[i_] != close) {
        if (c == '{') {
          read_string();
          ws();
          ++i_;  // colon
        }
        skip_value();
        ws();
        if (i_ < s_.size() && s_[i_] == ',') ++i_;
        ws();
      }
      ++i_;
    } else {
      while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != '}' && s_[i_] != ']' && s_[i_] != ' ' &&
             s_[i_] != '\n' && s_[i_] != '\r' && s_[i_] != '\t')
        ++i_;
    }
  }

  bool enter_member(const std::string& key) {
    ++i_;
    ws();
    std::optional<std::size_t> hit;
    while (i_ < s_.size() && s_[i_] != '}') {
      const std::string k = read_string();
      ws();
      ++i_;
      ws();
      if (k == key) hit = i_;  // duplicate keys: the parser keeps the last one
      skip_value();
      ws();
      if (i_ < s_.size() && s_[i_] == ',') ++i_;
      ws();
    }
    if (!hit) return false;
    i_ = *hit;
    return true;
  }

  bool enter_element(const std::string& token) {
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), index);
    if (ec != std::errc() || ptr != token.data() + token.size()) return false;
    ++i_;
    ws();
    for (std::size_t n = 0; n < index; ++n) {
      if (i_ >= s_.size() || s_[i_] == ']') return false;
      skip_value();
      ws();
      if (i_ < s_.size() && s_[i_] == ',') ++i_;
      ws();
    }
    return i_ < s_.size() && s_[i_] != ']';
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

class DocumentReader {
 public:
  explicit DocumentReader(std::string_view text) : text_(text) {}

  MultibranchedSurface read() {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text_);
    } catch (const nlohmann::json::parse_error& e) {
      const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
      auto [line, column] = line_column(text_, offset);
      throw SchemaError("syntax", "", line, column, std::string("invalid JSON: ") + e.what());
    }

    const Pointer root;
    expect_object(doc, root, {"format", "mode", "regions", "loci"});
    const auto& format = doc["format"];
    if (!format.is_string() || format.get<std::string>() != kFormatTag)
      fail("format", root / "format", "format must be \"mbs/1\"");
    const auto& mode_text = doc["mode"];
    if (!mode_text.is_string() || (mode_text != "strict" && mode_text != "minor"))
      fail("mode", root / "mode", "mode must be \"strict\" or \"minor\"");
    const ValidityMode mode = mode_text == "strict" ? ValidityMode::Strict : ValidityMode::Minor;

    std::vector<Region> regions;
    std::set<std::string> region_ids;
    std::set<std::string> circles;
    const auto& region_list = array_at(doc, root / "regions");
    for (std::size_t i = 0; i < region_list.size(); ++i) {
      const Pointer at = root / "regions" / i;
      const auto& r = region_list[i];
      expect_object(r, at, {"id", "orientable", "genus", "boundaries"});
      Region region;
      region.id = id_at(r, at / "id");
      if (!region_ids.insert(region.id).second) fail("duplicate-id", at / "id", "duplicate region id '" + region.id + "'");
      if (!r["orientable"].is_boolean()) fail("type", at / "orientable", "orientable must be a boolean");
      region.topology.orientable = r["orientable"].get<bool>();
      region.topology.genus = int_at(r, at / "genus", 0);
      const auto& boundaries = array_at(r, at / "boundaries");
      for (std::size_t j = 0; j < boundaries.size(); ++j) {
        std::string circle = id_at(boundaries, at / "boundaries" / j);
        if (!circles.insert(circle).second)
          fail("duplicate-circle", at / "boundaries" / j, "boundary circle '" + circle + "' is listed twice");
        region.boundary_circles.push_back(std::move(circle));
      }
      region.topology.boundary_count = static_cast<int>(region.boundary_circles.size());
      regions.push_back(std::move(region));
    }

    std::vector<BranchLocus> loci;
    std::set<std::string> locus_ids;
    std::set<std::string> slotted;
    const auto& locus_list = array_at(doc, root / "loci");
    for (std::size_t i = 0; i < locus_list.size(); ++i) {
      const Pointer at = root / "loci" / i;
      const auto& l = locus_list[i];
      expect_object(l, at, {"id", "wrapping", "slots"});
      BranchLocus locus;
      locus.id = id_at(l, at / "id");
      if (!locus_ids.insert(locus.id).second) fail("duplicate-id", at / "id", "duplicate locus id '" + locus.id + "'");
      locus.wrapping = int_at(l, at / "wrapping", 1);
      const auto& slots = array_at(l, at / "slots");
      for (std::size_t j = 0; j < slots.size(); ++j) {
        std::string circle = id_at(slots, at / "slots" / j);
        if (!slotted.insert(circle).second)
          fail("duplicate-slot", at / "slots" / j, "circle '" + circle + "' occupies more than one slot");
        locus.slots.push_back(std::move(circle));
      }
      loci.push_back(std::move(locus));
    }
    return {std::move(regions), std::move(loci), mode};
  }

 private:
  using Pointer = nlohmann::json::json_pointer;

  [[noreturn]] void fail(const std::string& rule, const Pointer& path, const std::string& message) const {
    int line = 0;
    int column = 0;
    if (auto offset = Locator(text_).find(path)) std::tie(line, column) = line_column(text_, *offset);
    const std::string where = path.empty() ? std::string("/") : path.to_string();
    throw SchemaError(rule, path.to_string(), line, column,
                      "schema error at " + where + " (line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ", rule " + rule + "): " + message);
  }

  void expect_object(const nlohmann::json& value, const Pointer& at, std::initializer_list<std::string_view> keys) {
    if (!value.is_object()) fail("type", at, "expected an object");
    for (const auto& [key, _] : value.items()) {
      bool known = false;
      for (auto k : keys) known = known || key == k;
      if (!known) fail("unknown-field", at / key, "unknown field '" + key + "'");
    }
    for (auto k : keys)
      if (!value.contains(k)) fail("required", at, "missing field '" + std::string(k) + "'");
  }

  const nlohmann::json& array_at(const nlohmann::json& parent, const Pointer& at) {
    const auto& value = parent[at.back()];
    if (!value.is_array()) fail("type", at, "expected an array");
    return value;
  }

  std::string id_at(const nlohmann::json& parent, const Pointer& at) {
    const auto& value = parent.is_array() ? parent[std::stoul(at.back())] : parent[at.back()];
    if (!value.is_string()) fail("type", at, "expected a string");
    std::string id = value.get<std::string>();
    if (id.empty()) fail("non-empty", at, "identifiers must be non-empty");
    return id;
  }

  int int_at(const nlohmann::json& parent, const Pointer& at, int minimum) {
    const auto& value = parent[at.back()];
    if (!value.is_number_integer()) fail("type", at, "expected an integer");
    const auto n = value.get<long long>();
    if (n < minimum) fail("minimum", at, at.back() + " must be at least " + std::to_string(minimum));
    if (n > 1'000'000) fail("maximum", at, at.back() + " is unreasonably large");
    return static_cast<int>(n);
  }

  std::string_view text_;
};

[[noreturn]] void bad_move(const std::string& rule, const std::string& message) {
  throw SchemaError(rule, "", 0, 0, message);
}

const nlohmann::json& field(const nlohmann::json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) bad_move("required", std::string("missing field '") + key + "'");
  return obj[key];
}

std::string string_field(const nlohmann::json& obj, const char* key) {
  const auto& v = field(obj, key);
  if (!v.is_string()) bad_move("type", std::string(key) + " must be a string");
  return v.get<std::string>();
}

int int_field(const nlohmann::json& obj, const char* key) {
  const auto& v = field(obj, key);
  if (!v.is_number_integer()) bad_move("type", std::string(key) + " must be an integer");
  return v.get<int>();
}

std::uint64_t hash_field(const nlohmann::json& obj, const char* key) {
  const std::string text = string_field(obj, key);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, 16);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.size() != 16)
    bad_move("type", std::string(key) + " must be 16 hex digits");
  return value;
}

std::string integer_text(const Integer& n) { return n.str(); }

}  // namespace

MultibranchedSurface parse_surface(std::string_view text) { return DocumentReader(text).read(); }

Json surface_to_json(const MultibranchedSurface& surface) {
  Json doc;
  doc["format"] = kFormatTag;
  doc["mode"] = to_string(surface.mode());
  doc["regions"] = Json::array();
  for (const auto& region : surface.regions()) {
    Json r;
    r["id"] = region.id;
    r["orientable"] = region.topology.orientable;
    r["genus"] = region.topology.genus;
    r["boundaries"] = region.boundary_circles;
    doc["regions"].push_back(std::move(r));
  }
  doc["loci"] = Json::array();
  for (const auto& locus : surface.loci()) {
    Json l;
    l["id"] = locus.id;
    l["wrapping"] = locus.wrapping;
    l["slots"] = locus.slots;
    doc["loci"].push_back(std::move(l));
  }
  return doc;
}

std::string serialize_surface(const MultibranchedSurface& surface) {
  return surface_to_json(surface).dump(2) + "\n";
}

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

Json to_json(const Move& move) {
  Json j;
  if (const auto* ix = std::get_if<IxSite>(&move)) {
    j["type"] = "ix";
    j["region"] = ix->region;
    j["kind"] = to_string(ix->kind);
  } else if (const auto* ih = std::get_if<IhSite>(&move)) {
    j["type"] = "ih";
    j["region"] = ih->region;
  } else {
    const auto& xi = std::get<XiChoice>(move);
    j["type"] = "xi";
    j["locus"] = xi.locus;
    Json split;
    if (const auto* n = std::get_if<NormalSplit>(&xi.split)) {
      split["kind"] = "normal";
      split["gap_a"] = n->gap_a;
      split["gap_b"] = n->gap_b;
    } else if (const auto* q = std::get_if<QuasiSplit>(&xi.split)) {
      split["kind"] = "quasi";
      split["start"] = q->start;
      split["length"] = q->length;
    } else {
      split["kind"] = "moebius";
      split["cut_gap"] = std::get<MoebiusSplit>(xi.split).cut_gap;
    }
    j["split"] = std::move(split);
  }
  j["text"] = describe(move);
  return j;
}

Json to_json(const MoveRecord& record) {
  Json j;
  j["initial_hash"] = hash_hex(record.initial_hash);
  j["final_hash"] = hash_hex(record.final_hash());
  j["steps"] = Json::array();
  for (const auto& step : record.steps) {
    Json s;
    s["move"] = to_json(step.move);
    s["hash_before"] = hash_hex(step.hash_before);
    s["hash_after"] = hash_hex(step.hash_after);
    j["steps"].push_back(std::move(s));
  }
  return j;
}

Json to_json(const ReductionStep& step) {
  Json j;
  if (const auto* r = std::get_if<RemoveRegion>(&step)) {
    j["type"] = "remove";
    j["region"] = r->region;
  } else {
    j["type"] = "contract";
    j["region"] = std::get<ContractRegion>(step).region;
  }
  return j;
}

Json to_json(const HomologyGroup& group) {
  Json j;
  j["betti"] = group.betti;
  j["torsion"] = Json::array();
  for (const auto& t : group.torsion) j["torsion"].push_back(integer_text(t));
  j["text"] = group.to_string();
  return j;
}

Json to_json(const HomologyProfile& profile) {
  Json j;
  for (std::size_t q = 0; q < 3; ++q) j["H" + std::to_string(q)] = to_json(profile.h(q));
  return j;
}

Json to_json(const IsoCertificate& cert) {
  Json j;
  j["region_map"] = Json::object();
  for (const auto& [a, b] : cert.region_map) j["region_map"][a] = b;
  j["locus_map"] = Json::object();
  for (const auto& [a, b] : cert.locus_map) j["locus_map"][a] = b;
  j["circle_map"] = Json::object();
  for (const auto& [a, b] : cert.circle_map) j["circle_map"][a] = b;
  j["alignment"] = Json::object();
  for (const auto& [locus, al] : cert.alignment) {
    Json a;
    a["rotation"] = al.rotation;
    a["reversed"] = al.reversed;
    a["slot_count"] = al.slot_count;
    j["alignment"][locus] = std::move(a);
  }
  return j;
}

Json to_json(const Violation& violation) {
  Json j;
  j["rule"] = violation.rule;
  j["subject"] = violation.subject;
  j["message"] = violation.message;
  return j;
}

Json to_json(const ObstructionFlags& flags) {
  Json j;
  j["has_nonorientable_closed_region"] = flags.has_nonorientable_closed_region;
  j["locus_wrapping_gcd"] = flags.locus_wrapping_gcd;
  return j;
}

Json to_json(const DecompositionSummary& summary) {
  Json j;
  j["solid_torus_count"] = summary.solid_torus_count;
  j["product_bundle_count"] = summary.product_bundle_count;
  j["twisted_bundle_count"] = summary.twisted_bundle_count;
  j["characteristic_annuli_count"] = summary.characteristic_annuli_count;
  return j;
}

Move move_from_json(const nlohmann::json& json) {
  const std::string type = string_field(json, "type");
  if (type == "ix") {
    const std::string kind = string_field(json, "kind");
    for (IxKind k : {IxKind::NormalAnnulus, IxKind::QuasiNormalAnnulus, IxKind::NormalMoebius})
      if (to_string(k) == kind) return IxSite{string_field(json, "region"), k};
    bad_move("enum", "unknown IX kind '" + kind + "'");
  }
  if (type == "ih") return IhSite{string_field(json, "region")};
  if (type != "xi") bad_move("enum", "unknown move type '" + type + "'");
  XiChoice choice;
  choice.locus = string_field(json, "locus");
  const auto& split = field(json, "split");
  const std::string kind = string_field(split, "kind");
  if (kind == "normal") {
    choice.split = NormalSplit{int_field(split, "gap_a"), int_field(split, "gap_b")};
  } else if (kind == "quasi") {
    choice.split = QuasiSplit{int_field(split, "start"), int_field(split, "length")};
  } else if (kind == "moebius") {
    choice.split = MoebiusSplit{int_field(split, "cut_gap")};
  } else {
    bad_move("enum", "unknown split kind '" + kind + "'");
  }
  return choice;
}

MoveRecord record_from_json(const nlohmann::json& json) {
  MoveRecord record;
  record.initial_hash = hash_field(json, "initial_hash");
  const auto& steps = field(json, "steps");
  if (!steps.is_array()) bad_move("type", "steps must be an array");
  for (const auto& s : steps)
    record.steps.push_back({move_from_json(field(s, "move")), hash_field(s, "hash_before"), hash_field(s, "hash_after")});
  return record;
}

std::string to_dot(const MultibranchedSurface& surface) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "graph mbs {\n";
  for (const auto& region : surface.regions()) {
    const auto& t = region.topology;
    os << "  " << quote("region:" + region.id) << " [shape=box, label="
       << quote(region.id + (t.orientable ? " g=" : " c=") + std::to_string(t.genus) + " b=" +
                std::to_string(t.boundary_count))
       << "];\n";
  }
  for (const auto& locus : surface.loci())
    os << "  " << quote("locus:" + locus.id) << " [shape=ellipse, label="
       << quote(locus.id + " w=" + std::to_string(locus.wrapping)) << "];\n";
  for (const auto& locus : surface.loci()) {
    for (std::size_t slot = 0; slot < locus.slots.size(); ++slot) {
      auto owner = surface.circle_owner(locus.slots[slot]);
      if (!owner) continue;
      os << "  " << quote("region:" + surface.regions()[*owner].id) << " -- " << quote("locus:" + locus.id)
         << " [label=" << quote(locus.slots[slot] + " #" + std::to_string(slot)) << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace mbs
