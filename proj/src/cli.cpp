#include "c0forge/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "c0forge/audit.hpp"
#include "c0forge/covers.hpp"
#include "c0forge/embedder.hpp"
#include "c0forge/error.hpp"
#include "c0forge/exact.hpp"
#include "c0forge/generators.hpp"
#include "c0forge/io.hpp"
#include "json.hpp"

namespace c0forge {

namespace {

struct RunConfig {
  std::string in;
  std::string out;
  std::string embedding;
  std::string kind = "random";
  std::string engine = "generic";
  std::string sweep_engine = "net";
  std::string target;
  std::string lambda = "auto";
  std::string lambdas = "1.2,1.5,2";
  std::string order = "input";
  double p = 2.0;
  std::size_t n = 8;
  std::size_t dim = 2;
  std::size_t depth = 3;
  std::size_t branch = 2;
  std::uint64_t seed = 1;
  double ratio = 0.5;
  double tol = 1e-9;
  bool prune = false;
  bool positive = false;
  bool sparse = false;
};

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadParams, "not a number: " + text);
  }
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_file(path, text);
}

SpaceFile load_space(const RunConfig& cfg) {
  if (cfg.in.empty()) throw Error(ErrorCode::BadParams, "--in is required");
  return space_from_json(read_file(cfg.in));
}

Embedding load_embedding(const RunConfig& cfg) {
  if (cfg.embedding.empty()) throw Error(ErrorCode::BadParams, "--embedding is required");
  return embedding_from_json(read_file(cfg.embedding));
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  SpaceFile file;
  if (cfg.kind == "random") {
    file = matrix_file(gen_random_metric(cfg.n, cfg.seed));
  } else if (cfg.kind == "lp") {
    file = lp_file(gen_lp_cloud(cfg.p, cfg.dim, cfg.n, cfg.seed, cfg.positive));
  } else if (cfg.kind == "ultra") {
    file = matrix_file(gen_random_ultrametric(cfg.n, cfg.seed));
  } else if (cfg.kind == "tree") {
    file = tree_file(cfg.branch > 0 && cfg.depth > 0 ? gen_full_tree(cfg.depth, cfg.branch)
                                                     : gen_random_tree(cfg.n, cfg.seed));
  } else if (cfg.kind == "shifted-axes") {
    file = matrix_file(gen_shifted_axes(cfg.n));
  } else if (cfg.kind == "dyadic") {
    file = matrix_file(gen_dyadic_shifted(cfg.depth));
  } else {
    throw Error(ErrorCode::BadParams, "unknown space kind " + cfg.kind);
  }
  emit(cfg.out, space_to_json(file), out);
  return 0;
}

struct EngineResult {
  Embedding emb;
  std::vector<std::string> keys;
};

EngineResult run_engine(const SpaceFile& file, const std::string& engine, const Target* target,
                        const std::string& lambda_text, const RunConfig& cfg) {
  EngineResult res;
  if (engine == "ultrametric") {
    auto um = embed_ultrametric(file.space);
    res.emb = std::move(um.embedding);
    for (const auto& idx : um.index) {
      std::string key = "(";
      for (std::size_t i = 0; i < idx.prefix.size(); ++i) key += (i ? "," : "") + num(idx.prefix[i]);
      res.keys.push_back(key + ")");
    }
  } else if (engine == "tree") {
    if (!file.tree) throw Error(ErrorCode::BadParams, "the tree engine needs a tree space file");
    auto te = embed_tree(*file.tree);
    res.emb = std::move(te.embedding);
    for (const auto& idx : te.index)
      res.keys.push_back(tree_label(idx.node) + ":" + std::to_string(idx.n));
  } else {
    const auto kind = parse_provider_kind(engine);
    if (!kind) throw Error(ErrorCode::BadParams, "unknown engine " + engine);
    if (is_lp_kind(*kind) && !file.cloud)
      throw Error(ErrorCode::BadParams, "lp engines need an lp space file");
    double lambda = 0.0;
    if (lambda_text == "auto") {
      const auto c = provider_constant(*kind, file.cloud ? file.cloud->p : 1.0);
      if (!c) throw Error(ErrorCode::BadParams, "engine " + engine + " needs an explicit lambda");
      lambda = *c;
    } else {
      lambda = parse_number(lambda_text);
    }
    const ProviderSpec provider = make_provider(*kind, lambda, file.cloud);
    EmbedOptions opts;
    opts.schedule_ratio = cfg.ratio;
    if (cfg.order == "farthest")
      opts.order = PointOrder::farthest_first;
    else if (cfg.order != "input")
      throw Error(ErrorCode::BadParams, "unknown order " + cfg.order);
    if (mode_of(*kind) == CoverMode::pi) {
      res.emb = embed_c0(file.space, lambda, provider, opts);
    } else {
      std::optional<PhiFunction> phi;
      if (lambda <= 2.0 && file.space.size() > 1) {
        if (*kind == ProviderKind::lp_positive)
          phi = phi_norm(*file.cloud);
        else
          phi = phi_net(file.space, lambda);
      }
      res.emb = embed_c0_plus(file.space, lambda, provider, phi ? &*phi : nullptr, opts);
    }
  }
  if (target && *target == Target::c0plus && res.emb.target == Target::c0) {
    res.emb = pos_split(res.emb);
    res.keys.clear();
  }
  if (cfg.prune) {
    res.emb = prune(file.space, res.emb);
    res.keys.clear();
  }
  return res;
}

std::optional<Target> parse_target_flag(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text == "c0") return Target::c0;
  if (text == "c0plus") return Target::c0plus;
  throw Error(ErrorCode::BadParams, "unknown target " + text);
}

void block_table(const Embedding& emb, std::ostream& os) {
  os << "dimension " << emb.dimension() << "\n";
  for (const auto& b : emb.blocks)
    os << "block " << b.k << " cols [" << b.col_begin << "," << b.col_end << ") eps "
       << num(b.eps) << "\n";
}

int cmd_embed(const RunConfig& cfg, std::ostream& out) {
  const SpaceFile file = load_space(cfg);
  const auto target = parse_target_flag(cfg.target);
  const EngineResult res = run_engine(file, cfg.engine, target ? &*target : nullptr, cfg.lambda, cfg);
  const std::string text =
      cfg.sparse ? embedding_to_sparse_json(res.emb, res.keys) : embedding_to_json(res.emb);
  if (cfg.out.empty()) {
    out << text;
  } else {
    write_file(cfg.out, text);
    block_table(res.emb, out);
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const SpaceFile file = load_space(cfg);
  const Embedding emb = load_embedding(cfg);
  const DistortionReport rep = distortion_report(file.space, emb, cfg.tol);
  bool pass = rep.pass;
  auto j = nlohmann::json::parse(report_to_json(rep));
  if (!emb.blocks.empty() || emb.dimension() == 0) {
    const BlockBoundReport blocks = check_block_bounds(file.space, emb);
    j["block_bounds"] = blocks.pass ? "PASS" : blocks.detail;
    pass = pass && blocks.pass;
  }
  if (emb.target == Target::c0plus && !rep.nonneg) {
    j["nonneg_violation"] = true;
    pass = false;
  }
  j["verdict"] = pass ? "PASS" : "FAIL";
  emit(cfg.out, j.dump(2) + "\n", out);
  return pass ? 0 : 1;
}

int cmd_prune(const RunConfig& cfg, std::ostream& out) {
  const SpaceFile file = load_space(cfg);
  const Embedding emb = load_embedding(cfg);
  const Embedding pruned = prune(file.space, emb);
  emit(cfg.out, embedding_to_json(pruned), out);
  return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const SpaceFile file = load_space(cfg);
  std::vector<double> lambdas;
  std::stringstream ss(cfg.lambdas);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) lambdas.push_back(parse_number(item));
  if (lambdas.empty()) throw Error(ErrorCode::BadParams, "--lambdas is empty");

  std::string csv = "lambda,dimension,max_ratio\n";
  bool pass = true;
  for (double lambda : lambdas) {
    const EngineResult res = run_engine(file, cfg.sweep_engine, nullptr, num(lambda), cfg);
    const DistortionReport rep = distortion_report(file.space, res.emb, cfg.tol);
    pass = pass && rep.pass;
    csv += num(lambda) + "," + std::to_string(res.emb.dimension()) + "," + num(rep.max_ratio) + "\n";
  }
  emit(cfg.out, csv, out);
  return pass ? 0 : 1;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  RunConfig c = cfg;
  if (c.embedding.empty()) c.embedding = c.in;
  const Embedding emb = load_embedding(c);
  std::size_t nonzeros = 0;
  std::size_t max_support = 0;
  for (std::size_t x = 0; x < emb.points; ++x) {
    std::size_t support = 0;
    for (const auto& col : emb.columns)
      if (col[x] != 0.0) ++support;
    nonzeros += support;
    max_support = std::max(max_support, support);
  }
  nlohmann::json j;
  j["target"] = std::string(to_string(emb.target));
  j["lambda"] = emb.lambda;
  j["points"] = emb.points;
  j["dimension"] = emb.dimension();
  j["nonzeros"] = nonzeros;
  const double cells = static_cast<double>(emb.points) * static_cast<double>(emb.dimension());
  j["density"] = cells > 0 ? static_cast<double>(nonzeros) / cells : 0.0;
  j["max_point_support"] = max_support;
  j["blocks"] = nlohmann::json::array();
  for (const auto& b : emb.blocks)
    j["blocks"].push_back({{"k", b.k},
                           {"cols", {b.col_begin, b.col_end}},
                           {"columns", b.col_end - b.col_begin},
                           {"F_k", b.F.size()},
                           {"eps_k", b.eps}});
  emit(cfg.out, j.dump(2) + "\n", out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Low-distortion embeddings of finite metric spaces into max-norm space"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* gen = app.add_subcommand("gen", "Write a generated space");
  gen->add_option("--kind", cfg.kind, "random|lp|ultra|tree|shifted-axes|dyadic");
  gen->add_option("--n", cfg.n, "Point count (N for shifted-axes)");
  gen->add_option("--dim", cfg.dim, "Dimension for lp clouds");
  gen->add_option("--p", cfg.p, "Exponent for lp clouds");
  gen->add_flag("--positive", cfg.positive, "lp cloud in the positive cone");
  gen->add_option("--depth", cfg.depth, "Depth for tree and dyadic");
  gen->add_option("--branch", cfg.branch, "Branching for full trees; 0 grows a random tree");
  gen->add_option("--seed", cfg.seed, "Generator seed");
  gen->add_option("--out", cfg.out, "Output file (stdout if absent)");

  auto* embed = app.add_subcommand("embed", "Embed a space");
  embed->add_option("--in", cfg.in, "Space file")->required();
  embed->add_option("--out", cfg.out, "Embedding file (stdout if absent)");
  embed->add_option("--engine", cfg.engine,
                    "generic|net|lp|generic-plus|net-plus|lp-plus|lp-positive|ultrametric|tree");
  embed->add_option("--target", cfg.target, "c0|c0plus");
  embed->add_option("--lambda", cfg.lambda, "Distortion constant or auto");
  embed->add_option("--schedule-ratio", cfg.ratio, "Scale ratio between blocks");
  embed->add_option("--order", cfg.order, "input|farthest");
  embed->add_flag("--prune", cfg.prune, "Drop redundant columns");
  embed->add_flag("--sparse", cfg.sparse, "Write the sparse layout");

  auto* verify = app.add_subcommand("verify", "Audit an embedding");
  verify->add_option("--in", cfg.in, "Space file")->required();
  verify->add_option("--embedding", cfg.embedding, "Embedding file")->required();
  verify->add_option("--tol", cfg.tol, "Relative tolerance");
  verify->add_option("--out", cfg.out, "Report file (stdout if absent)");

  auto* prune_cmd = app.add_subcommand("prune", "Drop redundant columns");
  prune_cmd->add_option("--in", cfg.in, "Space file")->required();
  prune_cmd->add_option("--embedding", cfg.embedding, "Embedding file")->required();
  prune_cmd->add_option("--out", cfg.out, "Output file (stdout if absent)");

  auto* sweep = app.add_subcommand("sweep", "Dimension and distortion across lambdas");
  sweep->add_option("--in", cfg.in, "Space file")->required();
  sweep->add_option("--lambdas", cfg.lambdas, "Comma-separated lambda values");
  sweep->add_option("--engine", cfg.sweep_engine, "Engine");
  sweep->add_option("--schedule-ratio", cfg.ratio, "Scale ratio between blocks");
  sweep->add_option("--order", cfg.order, "input|farthest");
  sweep->add_flag("--prune", cfg.prune, "Prune before measuring");
  sweep->add_option("--tol", cfg.tol, "Relative tolerance");
  sweep->add_option("--out", cfg.out, "CSV file (stdout if absent)");

  auto* report = app.add_subcommand("report", "Summarize an embedding");
  report->add_option("--embedding,--in", cfg.embedding, "Embedding file")->required();
  report->add_option("--out", cfg.out, "Output file (stdout if absent)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(cfg, out);
    if (embed->parsed()) return cmd_embed(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (prune_cmd->parsed()) return cmd_prune(cfg, out);
    if (sweep->parsed()) return cmd_sweep(cfg, out);
    if (report->parsed()) return cmd_report(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace c0forge
