// Copyright 2026 The prodiso Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "prodiso/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "prodiso/error.hpp"

namespace prodiso::io {

namespace fs = std::filesystem;

void RunConfig::check() const {
  if (node_cap == 0) throw InvalidInput("node cap must be positive");
  if (workers == 0) throw InvalidInput("worker count must be positive");
}

Json to_json(const Rat& r) {
  if (r.is_integer()) return Json(r.num());
  return Json(r.str());
}

namespace {

[[noreturn]] void content_error(const std::string& pointer,
                                const std::string& message) {
  throw ParseError(message + " at " + (pointer.empty() ? "/" : pointer), 0, 0,
                   pointer);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte ? e.byte - 1 : 0,
                                                  text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("JSON syntax error at line " + std::to_string(line) +
                         ", column " + std::to_string(column),
                     line, column);
  }
}

const Json& member(const Json& obj, const char* key, const std::string& at) {
  const auto it = obj.find(key);
  if (it == obj.end()) content_error(at, std::string("missing \"") + key + "\"");
  return *it;
}

}  // namespace

Rat rat_from_json(const Json& j, const std::string& pointer) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Rat::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      content_error(pointer, "bad rational \"" + j.get<std::string>() +
                                 "\": " + e.what());
    }
  }
  content_error(pointer, "expected an integer or a \"p/q\" string");
}

MetricSpace space_from_json(const Json& doc, const std::string& pointer,
                            std::size_t max_points) {
  if (!doc.is_object()) content_error(pointer, "expected a space object");
  std::string name = "space";
  if (const auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) content_error(pointer + "/name", "expected a string");
    name = it->get<std::string>();
  }
  const Json& points = member(doc, "points", pointer);
  if (!points.is_array()) content_error(pointer + "/points", "expected an array");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].is_string()) {
      content_error(pointer + "/points/" + std::to_string(i),
                    "expected a string label");
    }
    labels.push_back(points[i].get<std::string>());
  }
  const Json& dist = member(doc, "distances", pointer);
  const std::string dp = pointer + "/distances";
  if (!dist.is_array()) content_error(dp, "expected an array of rows");
  if (dist.size() != labels.size()) {
    content_error(dp, "expected " + std::to_string(labels.size()) + " rows, got " +
                          std::to_string(dist.size()));
  }
  std::vector<std::vector<Rat>> matrix;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const std::string rp = dp + "/" + std::to_string(i);
    if (!dist[i].is_array() || dist[i].size() != labels.size()) {
      content_error(rp, "expected a row of " + std::to_string(labels.size()) +
                            " entries");
    }
    std::vector<Rat> row;
    for (std::size_t j = 0; j < dist[i].size(); ++j) {
      row.push_back(rat_from_json(dist[i][j], rp + "/" + std::to_string(j)));
    }
    matrix.push_back(std::move(row));
  }
  return MetricSpace::validate(std::move(name), std::move(labels), matrix,
                               max_points);
}

MetricSpace parse_space(std::string_view text, std::size_t max_points) {
  return space_from_json(parse_json(text), "", max_points);
}

Json space_to_json(const MetricSpace& space) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < space.size(); ++j) {
      row.push_back(to_json(space.distance(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return Json{{"name", space.name()},
              {"points", space.labels()},
              {"distances", std::move(rows)}};
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ProductSpace parse_product(std::string_view text, const fs::path& base_dir) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) content_error("", "expected an object");
  if (!doc.contains("factors")) return ProductSpace::of(space_from_json(doc, ""));
  const Json& factors = doc["factors"];
  if (!factors.is_array() || factors.empty()) {
    content_error("/factors", "expected a non-empty array");
  }
  std::vector<MetricSpace> spaces;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const std::string at = "/factors/" + std::to_string(i);
    const Json& f = factors[i];
    if (f.is_object() && f.contains("file")) {
      if (!f["file"].is_string()) content_error(at + "/file", "expected a path");
      fs::path p = f["file"].get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      spaces.push_back(load_space(p));
    } else {
      spaces.push_back(space_from_json(f, at));
    }
  }
  return ProductSpace::make(std::move(spaces));
}

ProductSpace load_product(const fs::path& path) {
  return parse_product(read_file(path), path.parent_path());
}

MetricSpace load_space(const fs::path& path) {
  return parse_space(read_file(path));
}

Json point_to_json(const ProductSpace& space, std::size_t rank) {
  if (space.factor_count() == 1) return Json(space.label(rank));
  return Json(space.label_tuple(rank));
}

std::optional<std::size_t> point_from_json(const ProductSpace& space,
                                           const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (space.factor_count() == 1) return space.factor(0).index_of(s);
    for (std::size_t r = 0; r < space.size(); ++r) {
      if (space.label(r) == s) return r;
    }
    return std::nullopt;
  }
  if (j.is_array()) {
    std::vector<std::string> labels;
    for (const auto& e : j) {
      if (!e.is_string()) return std::nullopt;
      labels.push_back(e.get<std::string>());
    }
    return space.find(labels);
  }
  return std::nullopt;
}

std::vector<std::size_t> parse_map(std::string_view text,
                                   const ProductSpace& domain,
                                   const ProductSpace& codomain) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  const Json doc = parse_json(text);
  std::vector<std::size_t> map(domain.size(), kUnset);
  auto assign = [&](const Json& from, const Json& to, const std::string& at) {
    const auto a = point_from_json(domain, from);
    if (!a) content_error(at, "unknown domain point " + from.dump());
    const auto b = point_from_json(codomain, to);
    if (!b) content_error(at, "unknown codomain point " + to.dump());
    if (map[*a] != kUnset) content_error(at, "point " + from.dump() + " mapped twice");
    map[*a] = *b;
  };
  if (doc.is_object()) {
    for (const auto& [key, value] : doc.items()) {
      assign(Json(key), value, "/" + key);
    }
  } else if (doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const std::string at = "/" + std::to_string(i);
      if (!doc[i].is_array() || doc[i].size() != 2) {
        content_error(at, "expected a [from, to] pair");
      }
      assign(doc[i][0], doc[i][1], at);
    }
  } else {
    content_error("", "expected an object or an array of pairs");
  }
  for (std::size_t r = 0; r < map.size(); ++r) {
    if (map[r] == kUnset) {
      content_error("", "no image given for " + domain.label(r));
    }
  }
  return map;
}

Json map_to_json(const Isometry& f) {
  Json out = Json::array();
  for (std::size_t r = 0; r < f.map().size(); ++r) {
    out.push_back(Json::array({point_to_json(f.domain(), r),
                               point_to_json(f.codomain(), f(r))}));
  }
  return out;
}

Json slice_to_json(const ProductSpace& space, const Slice& slice) {
  Json points = Json::array();
  for (const auto& p : slice.members()) {
    points.push_back(point_to_json(space, space.rank(p)));
  }
  return Json{{"axis", slice.axis}, {"fixed", slice.fixed},
              {"values", slice.axis_set}, {"points", std::move(points)}};
}

Json certificate_to_json(const Isometry& f,
                         const ReducibilityCertificate& cert) {
  if (const auto* r = std::get_if<Reducible>(&cert)) {
    const auto& d = r->decomposition;
    Json maps = Json::array();
    for (std::size_t i = 0; i < d.factor_maps().size(); ++i) {
      const auto& fi = d.factor_maps()[i];
      Json pairs = Json::object();
      for (std::size_t v = 0; v < fi.map().size(); ++v) {
        pairs[fi.domain().label(v)] = fi.codomain().label(fi(v));
      }
      maps.push_back(Json{{"factor", i},
                          {"to_factor", d.perm()[i]},
                          {"map", std::move(pairs)}});
    }
    return Json{{"verdict", "reducible"},
                {"perm", d.perm()},
                {"factor_maps", std::move(maps)}};
  }
  if (const auto* h = std::get_if<HypothesisViolation>(&cert)) {
    return Json{{"verdict", "hypothesis-violation"},
                {"kind", to_string(h->kind)},
                {"detail", h->detail}};
  }
  const auto& irr = std::get<Irreducible>(cert);
  Json witness = Json::object();
  if (irr.witness_slice) {
    witness["slice"] = slice_to_json(f.domain(), *irr.witness_slice);
    Json image = Json::array();
    for (const auto& p : irr.witness_image) {
      image.push_back(point_to_json(f.codomain(), f.codomain().rank(p)));
    }
    witness["image"] = std::move(image);
  }
  if (irr.image_class) {
    const auto& c = *irr.image_class;
    witness["image_not_a_slice"] = Json{
        {"first", point_to_json(f.codomain(), f.codomain().rank(c.first))},
        {"second", point_to_json(f.codomain(), f.codomain().rank(c.second))},
        {"differing_axes", c.differing_axes}};
  }
  if (irr.colliding_axes) {
    witness["colliding_axes"] = {irr.colliding_axes->first,
                                 irr.colliding_axes->second};
  }
  if (irr.mismatch_point) {
    witness["mismatch_point"] = point_to_json(f.domain(), *irr.mismatch_point);
  }
  return Json{{"verdict", "irreducible"},
              {"reason", to_string(irr.reason)},
              {"witness", std::move(witness)},
              {"detail", irr.detail}};
}

Json quad_graph_to_json(const QuadGraph& quad) {
  Json vertices = Json::array();
  for (std::size_t v = 0; v < quad.vertex_count(); ++v) {
    Json coords = Json::array();
    for (const auto& c : quad.coordinates(v)) coords.push_back(to_json(c));
    vertices.push_back(
        Json{{"label", quad.vertices()[v].label}, {"coordinates", coords}});
  }
  Json edges = Json::array();
  for (const auto& [u, v] : quad.edges()) {
    edges.push_back(
        Json::array({quad.vertices()[u].label, quad.vertices()[v].label}));
  }
  return Json{{"dim", quad.dim()},
              {"scale", to_json(quad.scale())},
              {"vertex_count", quad.vertex_count()},
              {"edge_count", quad.edges().size()},
              {"vertices", std::move(vertices)},
              {"edges", std::move(edges)}};
}

Json embedding_to_json(const QuadEmbedding& embedding) {
  Json map = Json::object();
  const auto& quad = embedding.quad();
  for (std::size_t v = 0; v < quad.vertex_count(); ++v) {
    map[quad.vertices()[v].label] =
        point_to_json(embedding.target(), embedding.image(v));
  }
  return map;
}

Json admissibility_to_json(const QuadEmbedding& embedding) {
  const auto report = is_admissible(embedding);
  const auto& quad = embedding.quad();
  Json out = Json::object();
  out["map"] = embedding_to_json(embedding);
  out["resolution"] = to_json(embedding.resolution());
  out["isometric_on_vertices"] = report.isometric_on_vertices();
  if (report.distance_mismatch) {
    const auto& mm = *report.distance_mismatch;
    out["distance_mismatch"] = Json{{"u", quad.vertices()[mm.u].label},
                                    {"v", quad.vertices()[mm.v].label},
                                    {"expected", to_json(mm.expected)},
                                    {"actual", to_json(mm.actual)}};
  }
  Json edges = Json::array();
  for (const auto& e : report.edges) {
    Json row{{"edge", Json::array({quad.vertices()[e.edge.first].label,
                                   quad.vertices()[e.edge.second].label})},
             {"uniquely_geodesic", e.uniquely_geodesic}};
    if (!e.detail.empty()) row["detail"] = e.detail;
    edges.push_back(std::move(row));
  }
  out["edges"] = std::move(edges);
  out["admissible"] = report.admissible();
  const auto standard = is_standard(embedding);
  Json axes = Json::array();
  Json q = Json::array();
  std::size_t q_sum = 0;
  for (std::size_t j = 0; j < quad.dim(); ++j) {
    const std::size_t qj = q_statistic(embedding, j);
    q_sum += qj;
    q.push_back(qj);
    axes.push_back(standard.axis_of[j] ? Json(*standard.axis_of[j]) : Json());
  }
  out["standard"] = standard.standard;
  out["axis_of"] = std::move(axes);
  out["q"] = std::move(q);
  out["q_sum"] = q_sum;
  return out;
}

std::string digest(const std::vector<std::string>& inputs) {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  for (const auto& in : inputs) {
    const std::string len = std::to_string(in.size()) + ":";
    EVP_DigestUpdate(ctx, len.data(), len.size());
    EVP_DigestUpdate(ctx, in.data(), in.size());
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int md_len = 0;
  EVP_DigestFinal_ex(ctx, md, &md_len);
  EVP_MD_CTX_free(ctx);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = "sha256:";
  for (unsigned int i = 0; i < md_len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

Json Report::to_json(bool omit_timing) const {
  Json out{{"command", command},
           {"inputs_digest", inputs_digest},
           {"verdict", verdict},
           {"results", results}};
  if (!omit_timing) out["timing_ms"] = timing_ms;
  return out;
}

namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void render_text(const Json& j, int indent, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (is_scalar(value) ||
          (value.is_array() &&
           std::all_of(value.begin(), value.end(), is_scalar)) ||
          value.empty()) {
        out << pad << key << ": "
            << (is_scalar(value) ? scalar_text(value) : value.dump()) << "\n";
      } else {
        out << pad << key << ":\n";
        render_text(value, indent + 2, out);
      }
    }
  } else if (j.is_array()) {
    for (const auto& value : j) {
      if (value.is_object() && !value.empty()) {
        out << pad << "-\n";
        render_text(value, indent + 2, out);
      } else {
        out << pad << "- " << (is_scalar(value) ? scalar_text(value) : value.dump())
            << "\n";
      }
    }
  } else {
    out << pad << scalar_text(j) << "\n";
  }
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += " ";
    out += p;
  }
  return out;
}

void render_verify_table(const Json& results, std::ostringstream& out) {
  out << "case                          points  isometries  reducible  "
         "main-lemma  quad  result\n";
  for (const auto& c : results["cases"]) {
    std::string name = c["name"].get<std::string>();
    name.resize(std::max<std::size_t>(name.size(), 30), ' ');
    auto cell = [&](const char* key, std::size_t width) {
      std::string s = c.contains(key) && !c[key].is_null() ? c[key].dump() : "-";
      s.resize(std::max(s.size(), width), ' ');
      return s;
    };
    out << name << cell("points", 8) << cell("isometries", 12)
        << cell("reducible", 11) << cell("main_lemma_passed", 12)
        << cell("quad_dimension", 6) << (c["pass"].get<bool>() ? "pass" : "FAIL")
        << "\n";
  }
}

}  // namespace

std::string render(const Report& report, const RunConfig& config) {
  if (config.format == Format::kJson) {
    return report.to_json(config.omit_timing).dump(2) + "\n";
  }
  std::ostringstream out;
  out << "command: " << join(report.command) << "\n";
  out << "inputs_digest: " << report.inputs_digest << "\n";
  out << "verdict: " << report.verdict << "\n";
  if (!config.omit_timing) out << "timing_ms: " << report.timing_ms << "\n";
  if (!report.command.empty() && report.command.front() == "verify" &&
      report.results.contains("cases")) {
    render_verify_table(report.results, out);
  } else {
    out << "results:\n";
    render_text(report.results, 2, out);
  }
  return out.str();
}

namespace {

class Stopwatch {
 public:
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Json group_to_json(const GroupCheck& g) {
  Json out{{"order", g.order},
           {"distinct", g.distinct},
           {"has_identity", g.has_identity},
           {"closed_under_inverse", g.closed_under_inverse},
           {"closed_under_composition", g.closed_under_composition},
           {"ok", g.ok()}};
  if (g.composition_witness) {
    out["composition_witness"] = {g.composition_witness->first,
                                  g.composition_witness->second};
  }
  if (g.inverse_witness) out["inverse_witness"] = *g.inverse_witness;
  return out;
}

}  // namespace

Report run_validate(const std::vector<std::string>& files,
                    const RunConfig& config) {
  config.check();
  Stopwatch clock;
  Report report;
  report.command = {"validate"};
  report.command.insert(report.command.end(), files.begin(), files.end());
  std::vector<std::string> bytes;
  Json results = Json::array();
  bool all_valid = true;
  for (const auto& file : files) {
    bytes.push_back(read_file(file));
    Json row{{"file", file}};
    try {
      const auto product = parse_product(bytes.back(), fs::path(file).parent_path());
      const auto flat = product.flatten(std::max(product.size(), kMaxFlattenPoints));
      row["valid"] = true;
      row["name"] = product.name();
      row["points"] = product.size();
      row["factors"] = product.factor_count();
      row["diameter"] = to_json(flat.diameter());
    } catch (const AxiomViolation& e) {
      all_valid = false;
      row["valid"] = false;
      row["axiom"] = to_string(e.kind());
      row["witness"] = e.witness();
      row["detail"] = e.what();
    }
    results.push_back(std::move(row));
  }
  report.inputs_digest = digest(bytes);
  report.results = Json{{"spaces", std::move(results)}};
  report.verdict = all_valid ? "valid" : "axiom-violation";
  report.exit_code = all_valid ? kExitOk : kExitAxiom;
  report.timing_ms = clock.ms();
  return report;
}

Report run_product(const std::vector<std::string>& files,
                   const RunConfig& config) {
  config.check();
  Stopwatch clock;
  if (files.empty()) throw InvalidInput("product needs at least one file");
  Report report;
  report.command = {"product"};
  report.command.insert(report.command.end(), files.begin(), files.end());
  std::vector<std::string> bytes;
  std::vector<MetricSpace> factors;
  for (const auto& file : files) {
    bytes.push_back(read_file(file));
    const auto part = parse_product(bytes.back(), fs::path(file).parent_path());
    factors.insert(factors.end(), part.factors().begin(), part.factors().end());
  }
  const auto product = ProductSpace::make(std::move(factors));
  // Re-validating the induced matrix is the point of this command.
  const auto flat = product.flatten(std::max(product.size(), kMaxFlattenPoints));
  Json points = Json::array();
  for (std::size_t r = 0; r < product.size(); ++r) {
    points.push_back(point_to_json(product, r));
  }
  Json factor_docs = Json::array();
  for (const auto& f : product.factors()) factor_docs.push_back(space_to_json(f));
  Json space = space_to_json(flat);
  report.results = Json{{"name", product.name()},
                        {"factors", std::move(factor_docs)},
                        {"size", product.size()},
                        {"points", std::move(points)},
                        {"distances", space["distances"]},
                        {"metric_valid", true}};
  report.inputs_digest = digest(bytes);
  report.verdict = "valid";
  report.timing_ms = clock.ms();
  return report;
}

Report run_isometries(const std::string& domain_file,
                      const std::string& codomain_file, std::size_t limit,
                      bool count_only, const RunConfig& config) {
  config.check();
  Stopwatch clock;
  Report report;
  report.command = {"isometries", domain_file, codomain_file};
  const auto a_bytes = read_file(domain_file);
  const auto b_bytes = read_file(codomain_file);
  const auto domain = parse_product(a_bytes, fs::path(domain_file).parent_path());
  const auto codomain =
      parse_product(b_bytes, fs::path(codomain_file).parent_path());
  SearchOptions opts = config.search();
  opts.limit = limit;
  PermutationSet perms(domain.size());
  Json maps = Json::array();
  const auto stats = for_each_isometry(
      domain, codomain,
      [&](std::span<const std::size_t> m) {
        perms.push_back(m);
        if (!count_only) {
          Json pairs = Json::array();
          for (std::size_t r = 0; r < m.size(); ++r) {
            pairs.push_back(Json::array(
                {point_to_json(domain, r), point_to_json(codomain, m[r])}));
          }
          maps.push_back(std::move(pairs));
        }
        return true;
      },
      opts);
  Json results{{"domain", domain.name()},
               {"codomain", codomain.name()},
               {"count", stats.found},
               {"exhausted", stats.exhausted},
               {"nodes", stats.nodes}};
  if (stats.exhausted && domain == codomain && stats.found > 0) {
    results["group"] = group_to_json(check_group(perms));
  } else {
    results["group"] = nullptr;
  }
  if (!count_only) results["maps"] = std::move(maps);
  report.results = std::move(results);
  report.inputs_digest = digest({a_bytes, b_bytes});
  report.verdict = stats.found > 0 ? "isometric" : "not-isometric";
  report.timing_ms = clock.ms();
  return report;
}

Report run_decompose(const DecomposeRequest& request, const RunConfig& config) {
  config.check();
  Stopwatch clock;
  if (request.all == !request.map_file.empty()) {
    throw InvalidInput("decompose needs exactly one of --map and --all");
  }
  Report report;
  report.command = {"decompose", "--products", request.domain_file};
  if (!request.codomain_file.empty()) {
    report.command.push_back(request.codomain_file);
  }
  if (request.all) {
    report.command.push_back("--all");
  } else {
    report.command.insert(report.command.end(), {"--map", request.map_file});
  }
  std::vector<std::string> bytes{read_file(request.domain_file)};
  const auto domain =
      parse_product(bytes.back(), fs::path(request.domain_file).parent_path());
  ProductSpace codomain = domain;
  if (!request.codomain_file.empty()) {
    bytes.push_back(read_file(request.codomain_file));
    codomain = parse_product(bytes.back(),
                             fs::path(request.codomain_file).parent_path());
  }

  std::vector<Isometry> maps;
  if (request.all) {
    maps = enumerate_isometries(domain, codomain, config.search());
  } else {
    bytes.push_back(read_file(request.map_file));
    auto raw = parse_map(bytes.back(), domain, codomain);
    auto check = is_isometry(domain, codomain, std::move(raw));
    if (auto* iso = std::get_if<Isometry>(&check)) {
      maps.push_back(std::move(*iso));
    } else {
      throw InvalidInput("the map in " + request.map_file +
                         " is not an isometry");
    }
  }

  std::size_t reducible = 0;
  std::size_t irreducible = 0;
  std::size_t hypothesis = 0;
  Json certs = Json::array();
  for (const auto& f : maps) {
    const auto cert = decompose(f);
    if (std::holds_alternative<Reducible>(cert)) {
      ++reducible;
    } else if (std::holds_alternative<Irreducible>(cert)) {
      ++irreducible;
    } else {
      ++hypothesis;
    }
    Json row = certificate_to_json(f, cert);
    row["map"] = map_to_json(f);
    certs.push_back(std::move(row));
  }
  report.results = Json{{"domain", domain.name()},
                        {"codomain", codomain.name()},
                        {"count", maps.size()},
                        {"reducible", reducible},
                        {"irreducible", irreducible},
                        {"hypothesis_violations", hypothesis},
                        {"certificates", std::move(certs)}};
  if (hypothesis > 0) {
    report.verdict = "hypothesis-violation";
    report.exit_code = kExitHypothesis;
  } else if (irreducible > 0) {
    report.verdict = "irreducible";
    report.exit_code = kExitIrreducible;
  } else {
    report.verdict = "all-reducible";
  }
  report.inputs_digest = digest(bytes);
  report.timing_ms = clock.ms();
  return report;
}

namespace {

Rat parse_rat_arg(const std::string& text, const char* what) {
  try {
    return Rat::parse(text);
  } catch (const std::exception& e) {
    throw InvalidInput(std::string("bad ") + what + " \"" + text + "\": " +
                       e.what());
  }
}

std::vector<GeodesicChain> load_chains(const ProductSpace& product,
                                       const std::string& chains_text) {
  std::vector<GeodesicChain> chains;
  if (chains_text.empty()) {
    for (const auto& f : product.factors()) {
      chains.push_back(GeodesicChain::between(f, 0, f.size() - 1));
    }
    return chains;
  }
  const Json doc = parse_json(chains_text);
  if (!doc.is_array() || doc.size() != product.factor_count()) {
    content_error("", "expected one label array per factor");
  }
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string at = "/" + std::to_string(i);
    if (!doc[i].is_array()) content_error(at, "expected an array of labels");
    std::vector<std::size_t> pts;
    for (std::size_t k = 0; k < doc[i].size(); ++k) {
      const auto& e = doc[i][k];
      const auto idx = e.is_string() ? product.factor(i).index_of(e.get<std::string>())
                                     : std::nullopt;
      if (!idx) content_error(at + "/" + std::to_string(k), "unknown point");
      pts.push_back(*idx);
    }
    chains.push_back(GeodesicChain::make(product.factor(i), std::move(pts)));
  }
  return chains;
}

}  // namespace

Report run_quad(const QuadRequest& request, const RunConfig& config) {
  config.check();
  Stopwatch clock;
  Report report;
  report.command = {"quad"};
  if (request.dim) {
    report.command.insert(report.command.end(),
                          {"--dim", std::to_string(request.dim)});
  }
  report.command.insert(report.command.end(), {"--scale", request.scale});
  const Rat r = parse_rat_arg(request.scale, "scale");
  std::vector<std::string> bytes{"quad " + request.scale};

  if (request.product_file.empty()) {
    if (request.standard || request.max_dim || !request.chains_file.empty()) {
      throw InvalidInput("--standard, --chains and --max-dim need --embed");
    }
    if (request.dim == 0) throw InvalidInput("quad needs --dim");
    const QuadGraph quad(request.dim, r);
    report.results = quad_graph_to_json(quad);
    report.verdict = "ok";
    report.inputs_digest = digest(bytes);
    report.timing_ms = clock.ms();
    return report;
  }

  report.command.insert(report.command.end(), {"--embed", request.product_file});
  bytes.push_back(read_file(request.product_file));
  const auto product =
      parse_product(bytes.back(), fs::path(request.product_file).parent_path());
  const Rat resolution =
      request.resolution.empty() ? r : parse_rat_arg(request.resolution, "resolution");
  if (!request.resolution.empty()) {
    report.command.insert(report.command.end(), {"--resolution", request.resolution});
  }
  QuadSearchOptions opts;
  opts.node_cap = config.node_cap;
  opts.workers = config.workers;
  opts.limit = request.limit;

  if (request.max_dim) {
    report.command.push_back("--max-dim");
    const auto result = max_quad_dimension(product, r, resolution, opts);
    report.results = Json{{"product", product.name()},
                          {"scale", to_json(r)},
                          {"resolution", to_json(resolution)},
                          {"max_dimension", result.dimension},
                          {"nodes", result.nodes},
                          {"witness", result.witness
                                          ? admissibility_to_json(*result.witness)
                                          : Json()}};
    report.verdict = "dimension " + std::to_string(result.dimension);
  } else if (request.standard) {
    report.command.push_back("--standard");
    if (request.dim && request.dim != product.factor_count()) {
      throw InvalidInput("the chain construction has dimension equal to the "
                         "factor count");
    }
    if (!request.chains_file.empty()) {
      report.command.insert(report.command.end(), {"--chains", request.chains_file});
      bytes.push_back(read_file(request.chains_file));
    }
    const auto chains =
        load_chains(product, request.chains_file.empty() ? "" : bytes.back());
    const auto embedding = embed_quad(product, chains, r, resolution);
    Json cert = admissibility_to_json(embedding);
    const bool ok = cert["admissible"].get<bool>();
    report.results = Json{{"product", product.name()},
                          {"graph", quad_graph_to_json(embedding.quad())},
                          {"embedding", std::move(cert)}};
    report.verdict = ok ? "admissible" : "not-admissible";
    report.exit_code = ok ? kExitOk : kExitVerifyFailed;
  } else {
    if (request.dim == 0) throw InvalidInput("quad needs --dim");
    const auto result =
        find_admissible_embeddings(product, request.dim, r, resolution, opts);
    Json found = Json::array();
    for (const auto& e : result.embeddings) found.push_back(admissibility_to_json(e));
    report.results = Json{{"product", product.name()},
                          {"dim", request.dim},
                          {"scale", to_json(r)},
                          {"resolution", to_json(resolution)},
                          {"count", result.embeddings.size()},
                          {"exhausted", result.exhausted},
                          {"nodes", result.nodes},
                          {"embeddings", std::move(found)}};
    report.verdict = result.embeddings.empty() ? "none" : "found";
  }
  report.inputs_digest = digest(bytes);
  report.timing_ms = clock.ms();
  return report;
}

namespace {

Json desk_suite() {
  auto product_doc = [](std::vector<MetricSpace> factors) {
    Json fs = Json::array();
    for (const auto& f : factors) fs.push_back(space_to_json(f));
    return Json{{"factors", std::move(fs)}};
  };
  const auto p3 = path_graph(3);
  const auto p4 = path_graph(4);
  const auto p5 = path_graph(5);
  const auto two = complete_space(2);
  Json cases = Json::array();
  auto add = [&](const char* name, std::vector<MetricSpace> factors,
                 std::size_t isometries, std::size_t reducible) {
    cases.push_back(Json{{"name", name},
                         {"product", product_doc(std::move(factors))},
                         {"expect", {{"isometries", isometries},
                                     {"reducible", reducible},
                                     {"main_lemma", reducible}}}});
  };
  add("P_3 x P_3", {p3, p3}, 8, 8);
  add("P_5 x P_3", {p5, p3}, 4, 4);
  add("P_3 x P_5", {p3, p5}, 4, 4);
  add("P_4 x P_4", {p4, p4}, 8, 8);
  add("P_3 x P_3 x P_3", {p3, p3, p3}, 48, 48);
  add("K_2 x K_2", {two, two}, 24, 8);
  cases.push_back(Json{{"name", "P_5 x P_5 quad"},
                       {"product", product_doc({p5, p5})},
                       {"quad", {{"scale", 1}}},
                       {"expect", {{"isometries", 8},
                                   {"reducible", 8},
                                   {"main_lemma", 8},
                                   {"quad_dimension", 2}}}});
  cases.push_back(Json{{"name", "Q^3_1 graph"},
                       {"quad_graph", {{"dim", 3}, {"scale", 1}}},
                       {"expect", {{"vertices", 14}, {"edges", 24}}}});
  return Json{{"name", "desk"}, {"cases", std::move(cases)}};
}

Json run_case(const Json& c, const fs::path& base, const RunConfig& config) {
  Json out{{"name", c.value("name", "case")}};
  Json expect = c.value("expect", Json::object());
  std::vector<std::pair<std::string, Json>> actual;

  if (c.contains("quad_graph")) {
    const auto& q = c["quad_graph"];
    const QuadGraph quad(q.at("dim").get<std::size_t>(),
                         rat_from_json(q.at("scale"), "/quad_graph/scale"));
    out["vertices"] = quad.vertex_count();
    out["edges"] = quad.edges().size();
  }
  if (c.contains("product")) {
    const auto product = parse_product(c["product"].dump(), base);
    out["points"] = product.size();
    const auto flat = product.flatten(std::max(product.size(), kMaxFlattenPoints));
    (void)flat;
    const auto maps = enumerate_isometries(product, product, config.search());
    std::size_t reducible = 0;
    std::size_t round_trips = 0;
    std::size_t lemma = 0;
    std::size_t lemma_matches = 0;
    for (const auto& f : maps) {
      const auto cert = decompose(f);
      const auto report = check_main_lemma(f);
      if (report.passed) ++lemma;
      if (const auto* red = std::get_if<Reducible>(&cert)) {
        ++reducible;
        if (reconstruct(red->decomposition) == f) ++round_trips;
        if (report.passed && report.axis_map == red->decomposition.perm()) {
          ++lemma_matches;
        }
      }
    }
    out["isometries"] = maps.size();
    out["reducible"] = reducible;
    out["round_trips"] = round_trips;
    out["main_lemma_passed"] = lemma;
    out["main_lemma_matches_perm"] = lemma_matches;
    out["group_ok"] = check_group(maps).ok();
    if (c.contains("quad")) {
      const Rat r = rat_from_json(c["quad"].at("scale"), "/quad/scale");
      QuadSearchOptions opts;
      opts.node_cap = config.node_cap;
      opts.workers = config.workers;
      out["quad_dimension"] = max_quad_dimension(product, r, r, opts).dimension;
    }
    out["consistent"] = round_trips == reducible && lemma_matches == reducible &&
                        out["group_ok"].get<bool>();
  }

  bool pass = !out.contains("consistent") || out["consistent"].get<bool>();
  Json checks = Json::object();
  for (const auto& [key, want] : expect.items()) {
    const std::string field = key == "main_lemma" ? "main_lemma_passed" : key;
    const Json got = out.contains(field) ? out[field] : Json();
    const bool ok = got == want;
    pass = pass && ok;
    checks[key] = Json{{"expected", want}, {"actual", got}, {"ok", ok}};
  }
  out["checks"] = std::move(checks);
  out["pass"] = pass;
  return out;
}

}  // namespace

Report run_verify(const std::string& suite, const RunConfig& config) {
  config.check();
  Stopwatch clock;
  Report report;
  report.command = {"verify", "--suite", suite};
  Json doc;
  fs::path base;
  if (suite == "desk") {
    doc = desk_suite();
  } else {
    doc = parse_json(read_file(suite));
    base = fs::path(suite).parent_path();
  }
  if (!doc.is_object() || !doc.contains("cases") || !doc["cases"].is_array()) {
    content_error("/cases", "expected an array of cases");
  }
  Json cases = Json::array();
  std::size_t passed = 0;
  for (const auto& c : doc["cases"]) {
    cases.push_back(run_case(c, base, config));
    if (cases.back()["pass"].get<bool>()) ++passed;
  }
  const std::size_t total = cases.size();
  report.results = Json{{"suite", doc.value("name", suite)},
                        {"passed", passed},
                        {"total", total},
                        {"cases", std::move(cases)}};
  report.inputs_digest = digest({doc.dump()});
  report.verdict = passed == total ? "pass" : "fail";
  report.exit_code = passed == total ? kExitOk : kExitVerifyFailed;
  report.timing_ms = clock.ms();
  return report;
}

}  // namespace prodiso::io
