#include "c0forge/io.hpp"

#include <fstream>
#include <sstream>

#include "c0forge/error.hpp"
#include "json.hpp"

namespace c0forge {

using nlohmann::json;

SpaceFile matrix_file(FiniteMetricSpace space) {
  SpaceFile f;
  f.kind = SpaceKind::matrix;
  f.space = std::move(space);
  return f;
}

SpaceFile lp_file(LpPointCloud cloud) {
  SpaceFile f;
  f.kind = SpaceKind::lp;
  f.space = lp_space(cloud);
  f.cloud = std::make_shared<const LpPointCloud>(std::move(cloud));
  return f;
}

SpaceFile tree_file(TreeNodeSet tree) {
  SpaceFile f;
  f.kind = SpaceKind::tree;
  f.space = tree_space(tree);
  f.tree = std::move(tree);
  return f;
}

std::string space_to_json(const SpaceFile& file) {
  json j;
  switch (file.kind) {
    case SpaceKind::matrix:
      j["kind"] = "matrix";
      j["labels"] = file.space.labels();
      j["dist"] = file.space.matrix();
      break;
    case SpaceKind::lp:
      j["kind"] = "lp";
      j["p"] = file.cloud->p;
      j["positive"] = file.cloud->positive;
      j["points"] = file.cloud->points;
      break;
    case SpaceKind::tree:
      j["kind"] = "tree";
      j["nodes"] = json::array();
      for (const auto& node : file.tree->nodes) j["nodes"].push_back(node);
      break;
  }
  return j.dump() + "\n";
}

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Target parse_target(const json& j) {
  const auto s = j.at("target").get<std::string>();
  if (s == "c0") return Target::c0;
  if (s == "c0plus") return Target::c0plus;
  throw Error(ErrorCode::ParseError, "unknown target " + s);
}

}  // namespace

SpaceFile space_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded([&] {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "matrix") {
      auto dist = j.at("dist").get<std::vector<std::vector<double>>>();
      std::vector<std::string> labels;
      if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
      return matrix_file(validate_metric(dist, std::move(labels)));
    }
    if (kind == "lp") {
      LpPointCloud cloud;
      cloud.p = j.at("p").get<double>();
      cloud.positive = j.value("positive", false);
      cloud.points = j.at("points").get<std::vector<std::vector<double>>>();
      cloud.dim = cloud.points.empty() ? 0 : cloud.points.front().size();
      return lp_file(std::move(cloud));
    }
    if (kind == "tree") {
      TreeNodeSet tree;
      for (const auto& node : j.at("nodes")) tree.nodes.push_back(node.get<TreeNode>());
      return tree_file(std::move(tree));
    }
    throw Error(ErrorCode::ParseError, "unknown space kind " + kind);
  });
}

std::string embedding_to_json(const Embedding& emb) {
  json j;
  j["target"] = std::string(to_string(emb.target));
  j["lambda"] = emb.lambda;
  j["points"] = emb.points;
  j["columns"] = emb.columns;
  j["blocks"] = json::array();
  for (const auto& b : emb.blocks)
    j["blocks"].push_back(
        {{"k", b.k}, {"cols", {b.col_begin, b.col_end}}, {"F_k", b.F}, {"eps_k", b.eps}});
  return j.dump() + "\n";
}

std::string embedding_to_sparse_json(const Embedding& emb, const std::vector<std::string>& keys) {
  json j;
  j["target"] = std::string(to_string(emb.target));
  j["lambda"] = emb.lambda;
  j["points"] = emb.points;
  j["coords"] = json::array();
  for (std::size_t c = 0; c < emb.dimension(); ++c) {
    json values = json::object();
    for (std::size_t x = 0; x < emb.points; ++x)
      if (emb.columns[c][x] != 0.0) values[std::to_string(x)] = emb.columns[c][x];
    json entry{{"index", c}, {"values", values}};
    if (c < keys.size()) entry["key"] = keys[c];
    j["coords"].push_back(std::move(entry));
  }
  return j.dump() + "\n";
}

Embedding embedding_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded([&] {
    Embedding emb;
    emb.target = parse_target(j);
    emb.lambda = j.at("lambda").get<double>();
    if (j.contains("coords")) {
      emb.points = j.at("points").get<std::size_t>();
      for (const auto& entry : j.at("coords")) {
        std::vector<double> col(emb.points, 0.0);
        for (const auto& [key, value] : entry.at("values").items()) {
          const std::size_t x = std::stoul(key);
          if (x >= emb.points) throw Error(ErrorCode::ShapeMismatch, "sparse point out of range");
          col[x] = value.get<double>();
        }
        emb.columns.push_back(std::move(col));
      }
      return emb;
    }
    emb.columns = j.at("columns").get<std::vector<std::vector<double>>>();
    if (j.contains("points"))
      emb.points = j.at("points").get<std::size_t>();
    else
      emb.points = emb.columns.empty() ? 0 : emb.columns.front().size();
    for (const auto& col : emb.columns)
      if (col.size() != emb.points)
        throw Error(ErrorCode::ShapeMismatch, "ragged embedding columns");
    if (j.contains("blocks"))
      for (const auto& b : j.at("blocks")) {
        BlockMeta meta;
        meta.k = b.at("k").get<std::size_t>();
        const auto cols = b.at("cols").get<std::vector<std::size_t>>();
        if (cols.size() != 2 || cols[0] > cols[1] || cols[1] > emb.columns.size())
          throw Error(ErrorCode::ShapeMismatch, "bad block column range");
        meta.col_begin = cols[0];
        meta.col_end = cols[1];
        meta.F = make_point_set(b.at("F_k").get<std::vector<std::size_t>>());
        meta.eps = b.at("eps_k").get<double>();
        emb.blocks.push_back(std::move(meta));
      }
    return emb;
  });
}

std::string report_to_json(const DistortionReport& rep) {
  json j;
  j["verdict"] = rep.pass ? "PASS" : "FAIL";
  j["isometry"] = rep.isometry;
  j["lambda"] = rep.lambda;
  j["tol"] = rep.tol;
  j["pairs"] = rep.pairs;
  j["min_ratio"] = rep.min_ratio;
  j["max_ratio"] = rep.max_ratio;
  j["argmin"] = {rep.argmin.x, rep.argmin.y};
  j["argmax"] = {rep.argmax.x, rep.argmax.y};
  j["worst_lower_margin"] = rep.worst_lower_margin;
  j["margin_warnings"] = rep.margin_warnings;
  j["nonneg"] = rep.nonneg;
  j["column_lipschitz"] = rep.column_lipschitz;
  j["per_block_smallness"] = json::array();
  for (const auto& b : rep.blocks)
    j["per_block_smallness"].push_back({{"k", b.k}, {"pass", b.pass}, {"worst", b.worst}});
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::BadParams, "cannot write " + path);
  out << text;
}

}  // namespace c0forge
