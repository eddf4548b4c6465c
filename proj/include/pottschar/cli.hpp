#pragma once

// Command-line front end. run_cli() parses argv, dispatches to one of the
// subcommands and returns the process exit code:
//   0  success
//   1  an identity check failed (verify, blockcheck)
//   2  usage error, invalid input or a request beyond the enumeration budget

#include <pottschar/pottschar.hpp>
#include <pottschar/verify.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pottschar {

struct RunConfig {
  std::string format;
  int workers = 1;
  std::string seed_order = "fixed";
  std::string lattice;

  std::string l_arg = "all";

  std::string target;
  std::optional<int> j;
  std::optional<int> l;
  std::optional<int> p;

  bool count_ntc = false;
  bool dual = false;
  std::string spin;

  std::string suite = "all";
  int lmax = 3;
  int nmax = 4;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace cli_detail {

inline std::string character_name(int l) { return "K_1," + std::to_string(2 * l + 1); }

inline std::string term_label(const std::string& basis, int index) {
  if (basis == "K") return "K_1," + std::to_string(2 * index + 1);
  if (basis == "chi") return "chi_1," + std::to_string(2 * index + 1);
  return "Z_" + std::to_string(2 * index + 1);
}

inline std::string resolve_format(const RunConfig& cfg, const std::string& fallback,
                                  std::initializer_list<const char*> allowed) {
  std::string f = cfg.format.empty() ? fallback : cfg.format;
  for (const char* a : allowed)
    if (f == a) return f;
  throw UsageError("format '" + f + "' is not available for this command");
}

inline CyclicStrip lattice_or_throw(const RunConfig& cfg) {
  if (cfg.lattice.empty()) throw UsageError("--lattice is required");
  try {
    return parse_lattice_spec(cfg.lattice);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline void write_csv_rows(std::ostream& out, const std::string& name, const MultiPoly& p) {
  for (const auto& [e, c] : p.terms())
    out << name << ',' << e[0] << ',' << e[1] << ',' << e[2] << ',' << rational_string(c) << '\n';
}

inline int run_characters(const RunConfig& cfg, std::ostream& out) {
  auto format = resolve_format(cfg, "json", {"json", "csv", "text"});
  auto strip = lattice_or_throw(cfg);
  std::vector<int> indices;
  if (cfg.l_arg == "all") {
    for (int l = 0; l <= strip.width(); ++l) indices.push_back(l);
  } else {
    int l = 0;
    try {
      std::size_t used = 0;
      l = std::stoi(cfg.l_arg, &used);
      if (used != cfg.l_arg.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw UsageError("--l expects a non-negative integer or 'all'");
    }
    if (l < 0) throw UsageError("--l must be non-negative");
    indices.push_back(l);
  }
  std::vector<MultiPoly> values;
  if (cfg.l_arg == "all") {
    values = character_table(strip, cfg.workers);
  } else {
    values.push_back(character_K(strip, indices.front()));
  }

  if (format == "json") {
    Json doc;
    doc["lattice"] = strip.spec_string();
    doc["L"] = strip.width();
    doc["N"] = strip.length();
    Json chars = Json::object();
    for (std::size_t k = 0; k < indices.size(); ++k) chars[character_name(indices[k])] = to_json(values[k]);
    doc["characters"] = std::move(chars);
    out << doc.dump(2) << '\n';
  } else if (format == "csv") {
    out << "character,degQ,degv,degQ0,coeff\n";
    for (std::size_t k = 0; k < indices.size(); ++k) write_csv_rows(out, character_name(indices[k]), values[k]);
  } else {
    for (std::size_t k = 0; k < indices.size(); ++k)
      out << character_name(indices[k]) << " = " << values[k].to_string() << '\n';
  }
  return 0;
}

inline Json decomposition_json(const DecompositionResult& r, const std::string& lattice) {
  Json doc;
  doc["target"] = r.target;
  doc["lattice"] = lattice;
  doc["basis"] = r.basis;
  doc["prefactor"] = to_json(r.prefactor);
  Json terms = Json::array();
  for (const auto& t : r.terms) {
    Json term;
    term["index"] = t.index;
    term["label"] = term_label(r.basis, t.index);
    term["amplitude"] = to_json(t.amplitude);
    term["character"] = to_json(t.character);
    terms.push_back(std::move(term));
  }
  doc["terms"] = std::move(terms);
  doc["nonzero"] = r.nonzero_indices();
  doc["value"] = to_json(r.value);
  return doc;
}

inline BerahaParam beraha_or_throw(int p) {
  try {
    return BerahaParam::from_p(p);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline int run_decompose(const RunConfig& cfg, std::ostream& out) {
  auto format = resolve_format(cfg, "json", {"json", "text"});
  auto strip = lattice_or_throw(cfg);
  const int L = strip.width();
  const int N = strip.length();
  std::optional<BerahaParam> beraha;
  if (cfg.p) beraha = beraha_or_throw(*cfg.p);

  DecompositionResult result;
  if (cfg.target == "z") {
    auto table = make_character_table(strip, cfg.workers);
    result = beraha ? z_minimal_decomposition(table, *beraha) : z_decomposition(table);
  } else if (cfg.target == "z2j") {
    if (!cfg.j) throw UsageError("--target z2j needs --j");
    if (*cfg.j < 0 || *cfg.j > L) throw UsageError("--j must lie in [0, L]");
    auto table = make_character_table(strip, cfg.workers);
    if (beraha) {
      if (*cfg.j != 0) throw UsageError("the minimal-character form of Z_{2j+1} exists only for j = 0");
      if (!beraha->even()) throw UsageError("the minimal-character form of Z_1 needs even p");
      result = z1_minimal_decomposition(table, *beraha);
    } else {
      result = z2j_decomposition(table, *cfg.j);
    }
  } else if (cfg.target == "bigf") {
    if (!cfg.l) throw UsageError("--target bigf needs --l");
    if (*cfg.l < 0 || *cfg.l > L) throw UsageError("--l must lie in [0, L]");
    if (beraha) throw UsageError("--p is not available for --target bigf");
    result = bigF_decomposition(fk_enumerate(strip, cfg.workers), *cfg.l);
  } else if (cfg.target == "dual") {
    if (beraha) throw UsageError("--p is not available for --target dual");
    result = dual_decomposition(make_character_table(strip, cfg.workers));
  } else if (cfg.target == "zff") {
    if (L < 3) throw UsageError("--target zff needs a fixed-boundary width L >= 3");
    if (beraha) {
      if (!beraha->even()) throw UsageError("the minimal-character form of Z_ff needs even p");
      result = zff_minimal_decomposition(L, N, *beraha, cfg.workers);
    } else {
      result = zff_decomposition(L, N, cfg.workers);
    }
  } else {
    throw UsageError("unknown target '" + cfg.target + "'");
  }

  if (format == "json") {
    auto doc = decomposition_json(result, strip.spec_string());
    if (beraha) {
      doc["p"] = beraha->p;
      doc["Q"] = rational_string(beraha->q_value);
    }
    out << doc.dump(2) << '\n';
  } else {
    out << "target " << result.target << " on " << strip.spec_string() << " in basis " << result.basis << '\n';
    out << "prefactor = " << result.prefactor.to_string() << '\n';
    for (const auto& t : result.terms)
      out << "  [" << t.amplitude.to_string() << "] * " << term_label(result.basis, t.index) << " = "
          << t.character.to_string() << '\n';
    out << "value = " << result.value.to_string() << '\n';
  }
  return 0;
}

inline std::pair<int, Rational> parse_spin(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--spin expects Q,v");
  int q = 0;
  Rational v;
  try {
    std::size_t used = 0;
    auto head = text.substr(0, comma);
    q = std::stoi(head, &used);
    if (used != head.size()) throw std::invalid_argument("trailing text");
    v = parse_rational(text.substr(comma + 1));
  } catch (const std::exception&) {
    throw UsageError("--spin expects an integer Q and a rational v, e.g. 2,1/2");
  }
  if (q < 1) throw UsageError("--spin needs Q >= 1");
  return {q, v};
}

inline int run_oracle(const RunConfig& cfg, std::ostream& out) {
  auto format = resolve_format(cfg, "json", {"json", "text"});
  auto strip = lattice_or_throw(cfg);
  std::optional<std::pair<int, Rational>> spin;
  if (!cfg.spin.empty()) spin = parse_spin(cfg.spin);

  auto hist = fk_histogram(strip, cfg.workers);
  auto spectrum = spectrum_from_histogram(hist);
  std::optional<Rational> spin_value;
  if (spin) spin_value = spin_z(strip, spin->first, spin->second);

  if (format == "json") {
    Json doc;
    doc["lattice"] = strip.spec_string();
    doc["Z"] = to_json(spectrum.total());
    if (cfg.count_ntc) {
      Json by = Json::object();
      for (int j = 0; j <= spectrum.max_ntc(); ++j) by[std::to_string(j)] = to_json(spectrum.at(j));
      doc["ntc"] = std::move(by);
    }
    if (cfg.dual) doc["dual"] = to_json(dual_weight_sum(hist));
    if (spin) {
      Json s;
      s["Q"] = spin->first;
      s["v"] = rational_string(spin->second);
      s["Z"] = rational_string(*spin_value);
      doc["spin"] = std::move(s);
    }
    out << doc.dump(2) << '\n';
  } else {
    out << "Z = " << spectrum.total().to_string() << '\n';
    if (cfg.count_ntc)
      for (int j = 0; j <= spectrum.max_ntc(); ++j)
        out << "Z_" << 2 * j + 1 << " = " << spectrum.at(j).to_string() << '\n';
    if (cfg.dual) out << "dual = " << dual_weight_sum(hist).to_string() << '\n';
    if (spin)
      out << "spin Z(Q=" << spin->first << ", v=" << rational_string(spin->second)
          << ") = " << rational_string(*spin_value) << '\n';
  }
  return 0;
}

inline int run_verify(const RunConfig& cfg, std::ostream& out) {
  auto format = resolve_format(cfg, "text", {"json", "text"});
  if (cfg.suite != "all" && cfg.suite != "cyclic" && cfg.suite != "dual" && cfg.suite != "minimal")
    throw UsageError("unknown suite '" + cfg.suite + "'");
  if (cfg.lmax < 1 || cfg.nmax < 1) throw UsageError("--Lmax and --Nmax must be at least 1");
  if (cfg.nmax * (2 * cfg.lmax - 1) > kMaxEnumeratedEdges)
    throw UsageError("square:" + std::to_string(cfg.lmax) + "x" + std::to_string(cfg.nmax) + " has more than " +
                     std::to_string(kMaxEnumeratedEdges) + " edges; the oracle cannot enumerate it");
  VerifyOptions opt;
  opt.max_width = cfg.lmax;
  opt.max_length = cfg.nmax;
  opt.workers = cfg.workers;
  auto outcomes = run_verify_suite(cfg.suite, opt);
  bool ok = true;
  for (const auto& o : outcomes) ok = ok && o.passed;

  if (format == "json") {
    Json doc;
    doc["suite"] = cfg.suite;
    doc["Lmax"] = cfg.lmax;
    doc["Nmax"] = cfg.nmax;
    doc["passed"] = ok;
    doc["checks"] = outcomes.size();
    if (!ok) {
      const auto& f = outcomes.back();
      doc["counterexample"] = {{"suite", f.suite}, {"lattice", f.lattice}, {"identity", f.identity}, {"diff", f.diff}};
    }
    out << doc.dump(2) << '\n';
  } else if (ok) {
    out << "verify " << cfg.suite << ": " << outcomes.size() << " identities hold (Lmax=" << cfg.lmax
        << ", Nmax=" << cfg.nmax << ")\n";
  } else {
    const auto& f = outcomes.back();
    out << "FAIL [" << f.suite << "] " << f.lattice << ": " << f.identity << '\n';
    out << "  lhs - rhs = " << f.diff << '\n';
  }
  return ok ? 0 : 1;
}

inline int run_blockcheck(const RunConfig& cfg, std::ostream& out) {
  auto format = resolve_format(cfg, "json", {"json", "text"});
  auto strip = lattice_or_throw(cfg);
  if (strip.width() > 4) throw UsageError("blockcheck supports L <= 4");
  auto report = verify_block_structure(strip);
  if (format == "json") {
    Json doc;
    doc["lattice"] = strip.spec_string();
    doc["basis_size"] = report.basis_size;
    doc["lower_triangular"] = report.lower_triangular;
    Json blocks = Json::array();
    for (std::size_t l = 0; l < report.sub_block_count.size(); ++l) {
      blocks.push_back({{"l", l},
                        {"n_states", count_states(strip.width(), static_cast<int>(l))},
                        {"sub_blocks", report.sub_block_count[l]},
                        {"sub_block_dimension", report.sub_block_dimension[l]},
                        {"equal_to_T_l", static_cast<bool>(report.sub_blocks_equal[l])}});
    }
    doc["blocks"] = std::move(blocks);
    doc["passed"] = report.passed();
    if (!report.failure.empty()) doc["failure"] = report.failure;
    out << doc.dump(2) << '\n';
  } else {
    out << "blockcheck " << strip.spec_string() << ": " << (report.passed() ? "passed" : "FAILED") << '\n';
    if (!report.failure.empty()) out << "  " << report.failure << '\n';
  }
  return report.passed() ? 0 : 1;
}

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact characters of the cyclic Potts / FK cluster model on strips", "pottschar"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--workers", cfg.workers, "Worker threads")->check(CLI::Range(1, 256));
  app.add_option("--seed-order", cfg.seed_order, "Enumeration order")->check(CLI::IsMember({"fixed"}));

  auto* characters = app.add_subcommand("characters", "Compute K_{1,2l+1} by transfer matrix");
  characters->add_option("--lattice", cfg.lattice, "square:LxN")->required();
  characters->add_option("--l", cfg.l_arg, "Mark count l or 'all'");

  auto* decompose = app.add_subcommand("decompose", "Expand a partition function over characters");
  decompose->add_option("--target", cfg.target, "z, z2j, bigf, dual or zff")
      ->required()
      ->check(CLI::IsMember({"z", "z2j", "bigf", "dual", "zff"}));
  decompose->add_option("--lattice", cfg.lattice, "square:LxN")->required();
  decompose->add_option("--j", cfg.j, "NTC count for z2j");
  decompose->add_option("--l", cfg.l, "Index for bigf");
  decompose->add_option("--p", cfg.p, "Beraha index (2, 3, 4, 6) for minimal characters");

  auto* oracle = app.add_subcommand("oracle", "Brute-force FK enumeration");
  oracle->add_option("--lattice", cfg.lattice, "square:LxN")->required();
  oracle->add_flag("--count-ntc", cfg.count_ntc, "Split Z by number of wrapping clusters");
  oracle->add_flag("--dual", cfg.dual, "Weight wrapping clusters by Q0");
  oracle->add_option("--spin", cfg.spin, "Spin-representation Z at integer Q, rational v: Q,v");

  auto* verify = app.add_subcommand("verify", "Check the identities against the oracle");
  verify->add_option("--suite", cfg.suite, "all, cyclic, dual or minimal");
  verify->add_option("--Lmax", cfg.lmax, "Largest strip width");
  verify->add_option("--Nmax", cfg.nmax, "Largest strip length");

  auto* blockcheck = app.add_subcommand("blockcheck", "Check the block structure of the full transfer matrix");
  blockcheck->add_option("--lattice", cfg.lattice, "square:LxN")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "pottschar: " << e.what() << '\n';
    return 2;
  }

  try {
    if (characters->parsed()) return cli_detail::run_characters(cfg, out);
    if (decompose->parsed()) return cli_detail::run_decompose(cfg, out);
    if (oracle->parsed()) return cli_detail::run_oracle(cfg, out);
    if (verify->parsed()) return cli_detail::run_verify(cfg, out);
    if (blockcheck->parsed()) return cli_detail::run_blockcheck(cfg, out);
  } catch (const UsageError& e) {
    err << "pottschar: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    err << "pottschar: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "pottschar: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace pottschar
