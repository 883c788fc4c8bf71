#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tame/homalg/homalg.hpp"
#include "tame/pmod/pmod.hpp"
#include "tame/pmod/resolution.hpp"
#include "tame/specseq/specseq.hpp"
#include "tame/tamemod/colim.hpp"
#include "tame/tamemod/io.hpp"

using exactalg::DenseMat;
using exactalg::Decomposition;
using exactalg::FgAbGroup;
using exactalg::GroupHom;
using exactalg::Int;
using nlohmann::json;
using tamemod::FunctorPtr;
using tamemod::SigmaModule;
using tamemod::TruncIFunctor;

namespace {

// Shared bounds, echoed into every report header.
struct Config {
  int N = 4;
  int L = 3;
  int pmax = 2;
  std::string method = "bar";
  std::string format = "text";
  std::string stems_path;
};

// One report: deterministic text lines plus the same content as JSON.
struct Report {
  std::string command;
  std::vector<std::string> lines;
  json body = json::object();

  void line(const std::string& s) { lines.push_back(s); }

  void print(const Config& cfg) const {
    if (cfg.format == "json") {
      json out{{"command", command},
               {"bounds", json{{"N", cfg.N}, {"L", cfg.L}, {"pmax", cfg.pmax}}},
               {"method", cfg.method}};
      for (const auto& [k, v] : body.items()) out[k] = v;
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "# tamecalc " << command << "\n";
      std::cout << "# bounds: N=" << cfg.N << " L=" << cfg.L << " pmax=" << cfg.pmax
                << " method=" << cfg.method << "\n";
      for (const std::string& s : lines) std::cout << s << "\n";
    }
  }
};

json dec_json(const Decomposition& d) {
  json t = json::array();
  for (const Int& x : d.torsion) t.push_back((long long)x);
  return json{{"free_rank", d.free_rank}, {"torsion", std::move(t)}};
}

std::string dec_str(const FgAbGroup& g) { return g.decompose().to_string(); }

// A functor argument is a tamemod-v1 file if the path exists, else a builtin
// name such as P(2), Z, zero, or truncP(2,1).
TruncIFunctor load_input(const std::string& arg, int N) {
  if (std::filesystem::exists(arg)) return tamemod::load_functor(arg);
  return pmod::builtin_functor(arg, N);
}

// Coefficient spec for symmetric group modules: Z, Z/k, or sign.
SigmaModule coeff_module(int n, const std::string& spec) {
  SigmaModule b;
  b.n = n;
  DenseMat m;
  if (spec == "Z") {
    b.group = FgAbGroup(1);
    m = DenseMat::identity(1);
  } else if (spec == "sign") {
    b.group = FgAbGroup(1);
    m = DenseMat{{-1}};
  } else if (spec.rfind("Z/", 0) == 0) {
    b.group = FgAbGroup::cyclic(Int(std::stoll(spec.substr(2))));
    m = DenseMat::identity(1);
  } else if (spec == "regular") {
    int order = 1;
    for (int i = 2; i <= n; ++i) order *= i;
    b.group = FgAbGroup(order);
    std::vector<injcat::Perm> elems = injcat::enumerate_inj(n, n);
    for (int i = 1; i < n; ++i) {
      DenseMat p(order, order);
      for (int a = 0; a < order; ++a) {
        injcat::Perm g = elems[size_t(a)];  // left multiplication by s_i
        for (int& v : g.values) v = (v == i) ? i + 1 : (v == i + 1) ? i : v;
        int bpos = int(std::find(elems.begin(), elems.end(), g) - elems.begin());
        p.at(bpos, a) = 1;
      }
      b.transpositions.emplace_back(b.group, b.group, p);
    }
    return b;
  } else {
    throw std::invalid_argument("unknown coefficient spec: " + spec);
  }
  for (int i = 1; i < n; ++i) b.transpositions.emplace_back(b.group, b.group, m);
  return b;
}

std::vector<Int> parse_coeffs(const std::string& s) {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(Int(std::stoll(tok)));
  return out;
}

void report_levels(Report& rep, const TruncIFunctor& f) {
  json levels = json::array();
  for (int n = 0; n <= f.N; ++n) {
    rep.line("level " + std::to_string(n) + ": " + dec_str(f.level(n)));
    levels.push_back(dec_json(f.level(n).decompose()));
  }
  rep.body["levels"] = std::move(levels);
}

void maybe_save(const TruncIFunctor& f, const std::string& out, Report& rep) {
  if (out.empty()) return;
  tamemod::save_functor(f, out);
  rep.line("saved: " + out);
  rep.body["saved"] = out;
}

std::vector<homalg::TorResult> run_tor(const FunctorPtr& f, const Config& cfg,
                                       const std::string& method) {
  if (method == "bar") return homalg::tor_bar(*f, cfg.pmax);
  pmod::PResolution r = pmod::start_resolution(f, cfg.L);
  r = pmod::extend_resolution(std::move(r), cfg.pmax + 1, cfg.L);
  return homalg::tor_pres(r, cfg.pmax);
}

int cmd_validate(const Config& cfg, const std::string& input) {
  Report rep{"validate"};
  TruncIFunctor f = load_input(input, cfg.N);
  tamemod::ValidationReport v = f.validate();
  rep.body["input"] = input;
  rep.body["valid"] = v.ok;
  rep.line("input: " + input);
  if (v.ok) {
    rep.line("valid: yes");
  } else {
    rep.line("valid: no");
    rep.line("violation: " + v.message);
    rep.body["violations"] = json::array({v.message});
  }
  rep.print(cfg);
  return v.ok ? 0 : 1;
}

int cmd_colim(const Config& cfg, const std::string& input) {
  Report rep{"colim"};
  TruncIFunctor f = load_input(input, cfg.N);
  bool stab = f.N >= 2 && f.iota(f.N - 1).is_isomorphism() && f.iota(f.N - 2).is_isomorphism();
  rep.line("input: " + input);
  rep.line("colimit up to truncation: " + dec_str(f.level(f.N)));
  rep.line(std::string("stabilized: ") + (stab ? "yes" : "no"));
  rep.body["input"] = input;
  rep.body["colimit"] = dec_json(f.level(f.N).decompose());
  rep.body["stabilized"] = stab;
  rep.print(cfg);
  return 0;
}

int cmd_filtration(const Config& cfg, const std::string& input, int level,
                   const std::string& coeffs) {
  Report rep{"filtration"};
  FunctorPtr f = std::make_shared<TruncIFunctor>(load_input(input, cfg.N));
  tamemod::ColimElement e(f, level, parse_coeffs(coeffs));
  int k = tamemod::exact_filtration(e);
  rep.line("input: " + input);
  rep.line("element: level " + std::to_string(level) + " coeffs " + coeffs);
  rep.line("filtration: " + std::to_string(k) + " (bound N=" + std::to_string(f->N) + ")");
  rep.body["input"] = input;
  rep.body["level"] = level;
  rep.body["filtration"] = k;
  rep.body["bound"] = f->N;
  rep.print(cfg);
  return 0;
}

int cmd_semistable(const Config& cfg, const std::string& input) {
  Report rep{"semistable"};
  FunctorPtr f = std::make_shared<TruncIFunctor>(load_input(input, cfg.N));
  tamemod::SemistableVerdict v = tamemod::is_semistable_up_to(f);
  tamemod::DSurjectiveVerdict d = tamemod::check_d_surjective_up_to(f);
  rep.line("input: " + input);
  rep.line(std::string("semistable: ") + (v.semistable ? "yes" : "no") + " (bound N=" +
           std::to_string(v.bound) + ")");
  rep.line(std::string("d surjective: ") + (d.surjective ? "yes" : "no"));
  rep.body["input"] = input;
  rep.body["semistable"] = v.semistable;
  rep.body["d_surjective"] = d.surjective;
  rep.body["bound"] = v.bound;
  if (!v.semistable && v.witness) {
    rep.line("witness: level " + std::to_string(v.witness->level) + " generator " +
             std::to_string(v.witness->generator) + " transposition s_" +
             std::to_string(v.witness->transposition));
    rep.body["witness"] = json{{"level", v.witness->level},
                               {"generator", v.witness->generator},
                               {"transposition", v.witness->transposition}};
  }
  rep.print(cfg);
  return v.semistable ? 0 : 1;
}

int cmd_functor_op(const Config& cfg, const std::string& name, const std::string& input,
                   const std::string& out, int arg) {
  Report rep{name};
  TruncIFunctor f = load_input(input, cfg.N);
  TruncIFunctor g;
  if (name == "shift") g = tamemod::shift(f);
  else if (name == "induce") g = tamemod::induce(f);
  else if (name == "truncate") g = tamemod::truncate_above(f, arg);
  else g = tamemod::d_stage(f, arg).stage;
  rep.line("input: " + input);
  rep.body["input"] = input;
  report_levels(rep, g);
  maybe_save(g, out, rep);
  rep.print(cfg);
  return 0;
}

int cmd_tensor_sigma(const Config& cfg, int n, const std::string& coeff, bool twist,
                     const std::string& out) {
  Report rep{"tensor-sigma"};
  SigmaModule b = coeff_module(n, coeff);
  TruncIFunctor g = tamemod::tensor_sigma(b, cfg.N, twist);
  rep.line("coefficients: " + coeff + " over the symmetric group on " + std::to_string(n));
  rep.body["n"] = n;
  rep.body["coeff"] = coeff;
  rep.body["sign_twist"] = twist;
  report_levels(rep, g);
  maybe_save(g, out, rep);
  rep.print(cfg);
  return 0;
}

int cmd_kappa(const Config& cfg, int n) {
  Report rep{"kappa"};
  pmod::KappaData k = pmod::kappa(n, cfg.N);
  rep.line("n: " + std::to_string(n));
  rep.line(std::string("isomorphism verified levelwise: ") + (k.verified ? "yes" : "no"));
  rep.body["n"] = n;
  rep.body["verified"] = k.verified;
  rep.print(cfg);
  return k.verified ? 0 : 1;
}

int cmd_tor(const Config& cfg, const std::string& input) {
  Report rep{"tor"};
  FunctorPtr f = std::make_shared<TruncIFunctor>(load_input(input, cfg.N));
  rep.line("input: " + input);
  rep.body["input"] = input;
  bool agree = true;
  json table = json::array();
  if (cfg.method == "both") {
    auto bar = run_tor(f, cfg, "bar");
    auto pres = run_tor(f, cfg, "pres");
    for (int p = 0; p <= cfg.pmax; ++p) {
      bool eq = bar[p].value.decompose() == pres[p].value.decompose();
      agree = agree && eq;
      rep.line("Tor_" + std::to_string(p) + ": bar " + dec_str(bar[p].value) + " | pres " +
               dec_str(pres[p].value));
      table.push_back(json{{"p", p},
                           {"bar", dec_json(bar[p].value.decompose())},
                           {"pres", dec_json(pres[p].value.decompose())},
                           {"agree", eq}});
    }
    rep.line(std::string("verdict: ") + (agree ? "AGREE" : "DISAGREE"));
    rep.body["agree"] = agree;
  } else {
    auto tor = run_tor(f, cfg, cfg.method);
    for (int p = 0; p <= cfg.pmax; ++p) {
      rep.line("Tor_" + std::to_string(p) + ": " + dec_str(tor[p].value) +
               (tor[p].stabilized ? "" : " (not stabilized)"));
      table.push_back(json{{"p", p},
                           {"group", dec_json(tor[p].value.decompose())},
                           {"stabilized", tor[p].stabilized}});
    }
  }
  rep.body["tor"] = std::move(table);
  rep.print(cfg);
  return agree ? 0 : 1;
}

int cmd_ghom(const Config& cfg, int n, const std::string& coeff) {
  Report rep{"ghom"};
  SigmaModule b = coeff_module(n, coeff);
  auto h = homalg::group_homology(b, cfg.pmax);
  rep.line("group: symmetric on " + std::to_string(n) + ", coefficients " + coeff);
  json table = json::array();
  for (int p = 0; p <= cfg.pmax; ++p) {
    rep.line("H_" + std::to_string(p) + ": " + dec_str(h[size_t(p)]));
    table.push_back(json{{"p", p}, {"group", dec_json(h[size_t(p)].decompose())}});
  }
  rep.body["n"] = n;
  rep.body["coeff"] = coeff;
  rep.body["homology"] = std::move(table);
  rep.print(cfg);
  return 0;
}

int cmd_coinv(const Config& cfg, const std::string& input) {
  Report rep{"coinv"};
  TruncIFunctor f = load_input(input, cfg.N);
  homalg::CoinvariantsResult c = homalg::coinvariants(f);
  rep.line("input: " + input);
  rep.line("coinvariants: " + dec_str(c.value));
  rep.line(std::string("stabilized: ") + (c.stabilized ? "yes" : "no"));
  json terms = json::array();
  for (const FgAbGroup& t : c.terms) terms.push_back(dec_json(t.decompose()));
  rep.body["input"] = input;
  rep.body["coinvariants"] = dec_json(c.value.decompose());
  rep.body["stabilized"] = c.stabilized;
  rep.body["terms"] = std::move(terms);
  rep.print(cfg);
  return 0;
}

int cmd_e2(const Config& cfg, const std::string& kind, int n, int q0, int q1, bool sign) {
  specseq::StemsTable stems =
      cfg.stems_path.empty() ? specseq::StemsTable::builtin()
                             : specseq::StemsTable::load(cfg.stems_path);
  specseq::GradedTameModule g;
  if (kind == "free") {
    g = specseq::free_homotopy(n, stems.shifted(n), q0, q1, cfg.N);
  } else if (kind == "semifree") {
    std::vector<SigmaModule> coeffs;
    for (int k = q0; k <= q1; ++k)
      coeffs.push_back(specseq::stem_sigma_module(n, stems, k, sign));
    g = specseq::semifree_homotopy(n, coeffs, q0, sign, cfg.N);
  } else {
    throw std::invalid_argument("unknown spectrum kind: " + kind);
  }
  specseq::E2Page page = specseq::assemble_e2(g, cfg.pmax, cfg.method, cfg.L);
  if (cfg.format == "json") {
    std::cout << page.render_json();
  } else {
    std::cout << "# tamecalc e2\n";
    std::cout << "# bounds: N=" << cfg.N << " L=" << cfg.L << " pmax=" << cfg.pmax
              << " method=" << cfg.method << "\n";
    std::cout << page.render_text();
  }
  return 0;
}

int cmd_resolve(const Config& cfg, const std::string& input, int length) {
  Report rep{"resolve"};
  FunctorPtr f = std::make_shared<TruncIFunctor>(load_input(input, cfg.N));
  pmod::PResolution r = pmod::start_resolution(f, cfg.L);
  r = pmod::extend_resolution(std::move(r), length, cfg.L);
  rep.line("input: " + input);
  auto sum_str = [](const pmod::PSum& s) {
    std::string out;
    for (size_t i = 0; i < s.summands.size(); ++i)
      out += (i ? " + " : "") + std::string("P(") + std::to_string(s.summands[i]) + ")";
    return out.empty() ? std::string("0") : out;
  };
  json degrees = json::array();
  rep.line("degree 0: " + sum_str(r.p0));
  degrees.push_back(r.p0.summands);
  for (int t = 0; t < r.length(); ++t) {
    rep.line("degree " + std::to_string(t + 1) + ": " + sum_str(r.maps[size_t(t)].source));
    degrees.push_back(r.maps[size_t(t)].source.summands);
  }
  rep.line(std::string("complete: ") + (r.complete ? "yes" : "no"));
  if (!r.note.empty()) rep.line("note: " + r.note);
  rep.body["input"] = input;
  rep.body["degrees"] = std::move(degrees);
  rep.body["complete"] = r.complete;
  rep.body["note"] = r.note;
  rep.print(cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"calculator for tame modules over the injection monoid"};
  app.require_subcommand(1);
  app.fallthrough();  // bounds may follow the subcommand
  Config cfg;
  app.add_option("--trunc", cfg.N, "truncation level N")->capture_default_str();
  app.add_option("--search", cfg.L, "kernel search level L")->capture_default_str();
  app.add_option("--pmax", cfg.pmax, "top homological degree")->capture_default_str();
  app.add_option("--method", cfg.method, "tor engine")
      ->check(CLI::IsMember({"bar", "pres", "both"}))
      ->capture_default_str();
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--stems", cfg.stems_path, "stems table file");

  std::string input, coeffs, out, coeff = "Z", kind = "free";
  int level = 0, narg = 1, arg = 0, q0 = 0, q1 = 0, length = 3;
  bool twist = false;

  auto* validate = app.add_subcommand("validate", "check the functor relations");
  validate->add_option("input", input)->required();
  auto* colim = app.add_subcommand("colim", "colimit up to the truncation");
  colim->add_option("input", input)->required();
  auto* filtration = app.add_subcommand("filtration", "exact filtration of an element");
  filtration->add_option("input", input)->required();
  filtration->add_option("--level", level, "representing level")->required();
  filtration->add_option("--coeffs", coeffs, "generator coefficients")->required();
  auto* semistable = app.add_subcommand("semistable", "trivial-action verdict");
  semistable->add_option("input", input)->required();
  auto* shift = app.add_subcommand("shift", "algebraic shift");
  shift->add_option("input", input)->required();
  shift->add_option("--out", out, "save the result");
  auto* induce = app.add_subcommand("induce", "induction from the shift adjunction");
  induce->add_option("input", input)->required();
  induce->add_option("--out", out, "save the result");
  auto* truncate = app.add_subcommand("truncate", "zero out levels above a bound");
  truncate->add_option("input", input)->required();
  truncate->add_option("--at", arg, "highest kept level")->required();
  truncate->add_option("--out", out, "save the result");
  auto* dstage = app.add_subcommand("dstage", "stage of the d-tower");
  dstage->add_option("input", input)->required();
  dstage->add_option("--k", arg, "tower stage")->required();
  auto* kappa = app.add_subcommand("kappa", "induction isomorphism on representables");
  kappa->add_option("n", narg)->required();
  auto* tensor = app.add_subcommand("tensor-sigma", "representable tensored over Sigma_n");
  tensor->add_option("n", narg)->required();
  tensor->add_option("--coeff", coeff, "Z, Z/k, sign, or regular")->capture_default_str();
  tensor->add_flag("--twist", twist, "sign-twist the action");
  tensor->add_option("--out", out, "save the result");
  auto* tor = app.add_subcommand("tor", "derived coinvariants");
  tor->add_option("input", input)->required();
  auto* ghom = app.add_subcommand("ghom", "symmetric group homology");
  ghom->add_option("n", narg)->required();
  ghom->add_option("--coeff", coeff, "Z, Z/k, or sign")->capture_default_str();
  auto* coinv = app.add_subcommand("coinv", "monoid coinvariants");
  coinv->add_option("input", input)->required();
  auto* e2 = app.add_subcommand("e2", "E2 window of the detection spectral sequence");
  e2->add_option("kind", kind, "free or semifree")->required();
  e2->add_option("--n", narg, "cell dimension")->capture_default_str();
  e2->add_option("--q0", q0, "lowest degree")->capture_default_str();
  e2->add_option("--q1", q1, "highest degree")->capture_default_str();
  e2->add_flag("--sign", twist, "sign action and twist on the coefficients");
  auto* resolve = app.add_subcommand("resolve", "resolution by representables");
  resolve->add_option("input", input)->required();
  resolve->add_option("--length", length, "resolution length")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(cfg, input);
    if (*colim) return cmd_colim(cfg, input);
    if (*filtration) return cmd_filtration(cfg, input, level, coeffs);
    if (*semistable) return cmd_semistable(cfg, input);
    if (*shift) return cmd_functor_op(cfg, "shift", input, out, 0);
    if (*induce) return cmd_functor_op(cfg, "induce", input, out, 0);
    if (*truncate) return cmd_functor_op(cfg, "truncate", input, out, arg);
    if (*dstage) return cmd_functor_op(cfg, "dstage", input, out, arg);
    if (*kappa) return cmd_kappa(cfg, narg);
    if (*tensor) return cmd_tensor_sigma(cfg, narg, coeff, twist, out);
    if (*tor) return cmd_tor(cfg, input);
    if (*ghom) return cmd_ghom(cfg, narg, coeff);
    if (*coinv) return cmd_coinv(cfg, input);
    if (*e2) return cmd_e2(cfg, kind, narg, q0, q1, twist);
    if (*resolve) return cmd_resolve(cfg, input, length);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
