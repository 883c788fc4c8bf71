#include "tame/specseq/specseq.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tame/pmod/pmod.hpp"
#include "tame/pmod/resolution.hpp"

namespace specseq {

using exactalg::DenseMat;
using exactalg::GroupHom;
using exactalg::Int;
using homalg::TorResult;
using nlohmann::json;

namespace {

// M tensor identity_k on generator bases indexed (i, j) -> i * k + j.
DenseMat kron_id(const DenseMat& m, int k) {
  DenseMat out(m.rows() * k, m.cols() * k);
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      if (m.at(r, c) == 0) continue;
      for (int j = 0; j < k; ++j) out.at(r * k + j, c * k + j) = m.at(r, c);
    }
  return out;
}

FgAbGroup tensor_groups(const FgAbGroup& f, const FgAbGroup& a) {
  int gf = f.num_generators(), ga = a.num_generators();
  DenseMat rels(0, gf * ga);
  rels = rels.vstack(kron_id(f.relations(), ga));
  const DenseMat& ra = a.relations();
  DenseMat right(gf * ra.rows(), gf * ga);
  for (int i = 0; i < gf; ++i)
    for (int t = 0; t < ra.rows(); ++t)
      for (int j = 0; j < ga; ++j) right.at(i * ra.rows() + t, i * ga + j) = ra.at(t, j);
  return FgAbGroup(gf * ga, rels.vstack(right));
}

Decomposition dec_from_json(const json& j) {
  Decomposition d;
  d.free_rank = j.at("free_rank").get<int>();
  for (const json& t : j.value("torsion", json::array()))
    d.torsion.push_back(Int(t.get<long long>()));
  return d;
}

json dec_to_json(const Decomposition& d) {
  json t = json::array();
  for (const Int& x : d.torsion) t.push_back((long long)x);
  return json{{"free_rank", d.free_rank}, {"torsion", std::move(t)}};
}

std::vector<TorResult> cell_tor(const FunctorPtr& f, int p_max, const std::string& method,
                                int search_level) {
  if (method == "bar") return homalg::tor_bar(*f, p_max);
  pmod::PResolution r = pmod::start_resolution(f, search_level);
  r = pmod::extend_resolution(std::move(r), p_max + 1, search_level);
  return homalg::tor_pres(r, p_max);
}

}  // namespace

StemsTable StemsTable::builtin() {
  StemsTable t;
  t.groups[0] = {1, {}};
  t.groups[1] = {0, {2}};
  t.groups[2] = {0, {2}};
  t.groups[3] = {0, {24}};
  t.groups[4] = {0, {}};
  t.groups[5] = {0, {}};
  t.groups[6] = {0, {2}};
  t.groups[7] = {0, {240}};
  return t;
}

StemsTable StemsTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open stems table: " + path);
  json j = json::parse(in);
  StemsTable t;
  for (const auto& [key, val] : j.items()) t.groups[std::stoi(key)] = dec_from_json(val);
  return t;
}

StemsTable StemsTable::shifted(int by) const {
  StemsTable t;
  for (const auto& [q, d] : groups) t.groups[q + by] = d;
  return t;
}

FgAbGroup StemsTable::at(int q) const {
  auto it = groups.find(q);
  if (it == groups.end())
    throw std::invalid_argument("stems table has no degree " + std::to_string(q));
  return FgAbGroup::from_decomposition(it->second);
}

TruncIFunctor tensor_with_group(const TruncIFunctor& f, const FgAbGroup& a) {
  int ga = a.num_generators();
  TruncIFunctor out;
  out.N = f.N;
  out.grade = f.grade;
  for (int n = 0; n <= f.N; ++n) out.levels.push_back(tensor_groups(f.level(n), a));
  for (int n = 0; n <= f.N; ++n)
    for (int i = 1; i + 1 <= n; ++i)
      out.transpositions.emplace(
          std::pair{n, i},
          GroupHom(out.level(n), out.level(n), kron_id(f.s(n, i).matrix(), ga)));
  for (int n = 0; n < f.N; ++n)
    out.stab.emplace_back(out.level(n), out.level(n + 1), kron_id(f.iota(n).matrix(), ga));
  return out;
}

GradedTameModule free_homotopy(int n, const StemsTable& stems, int k_min, int k_max, int N) {
  GradedTameModule g;
  g.k_min = k_min;
  for (int k = k_min; k <= k_max; ++k) {
    if (!stems.has(k + n))
      throw std::invalid_argument("stems table has no degree " + std::to_string(k + n));
    FgAbGroup a = stems.at(k + n);
    if (a.is_trivial()) {
      g.degrees.push_back(std::make_shared<TruncIFunctor>(tamemod::zero_functor(N, k)));
    } else {
      g.degrees.push_back(std::make_shared<TruncIFunctor>(
          tensor_with_group(pmod::p_functor(n, N, k), a)));
    }
  }
  return g;
}

GradedTameModule semifree_homotopy(int n, const std::vector<SigmaModule>& coeffs, int k_min,
                                   bool sign_twist, int N) {
  GradedTameModule g;
  g.k_min = k_min;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    const SigmaModule& b = coeffs[i];
    if (b.n != n) throw std::invalid_argument("coefficient module has the wrong group");
    tamemod::ValidationReport rep = b.validate();
    if (!rep.ok) throw std::invalid_argument("invalid coefficient action: " + rep.message);
    g.degrees.push_back(std::make_shared<TruncIFunctor>(
        tamemod::tensor_sigma(b, N, sign_twist, k_min + int(i))));
  }
  return g;
}

SigmaModule stem_sigma_module(int n, const StemsTable& stems, int q, bool sign_action) {
  SigmaModule b;
  b.n = n;
  b.group = stems.at(q);
  DenseMat m = DenseMat::identity(b.group.num_generators());
  if (sign_action) m = DenseMat(m.rows(), m.cols()) - m;
  for (int i = 1; i < n; ++i) b.transpositions.emplace_back(b.group, b.group, m);
  return b;
}

E2Page assemble_e2(const GradedTameModule& g, int p_max, const std::string& method,
                   int search_level) {
  if (method != "bar" && method != "pres" && method != "both")
    throw std::invalid_argument("unknown method: " + method);
  E2Page page;
  page.p_max = p_max;
  page.q_min = g.k_min;
  page.search_level = (method == "bar") ? -1 : search_level;
  for (const FunctorPtr& f : g.degrees) {
    page.truncation = f->N;
    std::vector<E2Cell> row;
    if (method == "both") {
      auto bar = homalg::tor_bar(*f, p_max);
      auto pres = cell_tor(f, p_max, "pres", search_level);
      for (int p = 0; p <= p_max; ++p) {
        E2Cell c{pres[p].value, "both", bar[p].stabilized && pres[p].stabilized,
                 bar[p].value.decompose() == pres[p].value.decompose()};
        row.push_back(std::move(c));
      }
    } else {
      auto tor = cell_tor(f, p_max, method, search_level);
      for (int p = 0; p <= p_max; ++p)
        row.push_back({tor[p].value, tor[p].method, tor[p].stabilized, true});
    }
    page.rows.push_back(std::move(row));
    page.edge.push_back(homalg::coinvariants(*f).value);
  }
  return page;
}

std::string E2Page::render_text() const {
  std::ostringstream os;
  os << "E2 window: p = 0.." << p_max << ", q = " << q_min << ".." << q_max() << "\n";
  os << "truncation N = " << truncation;
  if (search_level >= 0) os << ", search level L = " << search_level;
  os << "\n";
  std::vector<std::vector<std::string>> txt;
  std::vector<size_t> width(size_t(p_max) + 1, 1);
  for (const auto& row : rows) {
    std::vector<std::string> t;
    for (int p = 0; p <= p_max; ++p) {
      std::string s = row[p].value.decompose().to_string();
      if (!row[p].agree) s += " [DISAGREE]";
      width[p] = std::max(width[p], s.size());
      t.push_back(std::move(s));
    }
    txt.push_back(std::move(t));
  }
  for (int q = q_max(); q >= q_min; --q) {
    os << "q = " << q << " |";
    for (int p = 0; p <= p_max; ++p) {
      const std::string& s = txt[size_t(q - q_min)][size_t(p)];
      os << " " << s << std::string(width[p] - s.size(), ' ');
    }
    os << "\n";
  }
  os << "     p =";
  for (int p = 0; p <= p_max; ++p)
    os << " " << p << std::string(width[p] - std::to_string(p).size(), ' ');
  os << "\n";
  os << "edge p = 0 (coinvariants):";
  for (size_t i = 0; i < edge.size(); ++i)
    os << " q=" << (q_min + int(i)) << ":" << edge[i].decompose().to_string();
  os << "\n";
  os << "differentials d^r (bidegree (-r, r-1)): present but not computed\n";
  os << "abutment: converges to the true homotopy of the detection object; not computed\n";
  return os.str();
}

std::string E2Page::render_json() const {
  json cells = json::array();
  for (int q = q_min; q <= q_max(); ++q)
    for (int p = 0; p <= p_max; ++p) {
      const E2Cell& c = cell(p, q);
      cells.push_back(json{{"p", p},
                           {"q", q},
                           {"group", dec_to_json(c.value.decompose())},
                           {"method", c.method},
                           {"stabilized", c.stabilized},
                           {"agree", c.agree}});
    }
  json edge_j = json::array();
  for (size_t i = 0; i < edge.size(); ++i)
    edge_j.push_back(json{{"q", q_min + int(i)}, {"group", dec_to_json(edge[i].decompose())}});
  json out{{"p_max", p_max},
           {"q_min", q_min},
           {"q_max", q_max()},
           {"truncation", truncation},
           {"search_level", search_level},
           {"cells", std::move(cells)},
           {"edge", std::move(edge_j)},
           {"differentials", "present but not computed"},
           {"abutment", "converges to the true homotopy of the detection object; not computed"}};
  return out.dump(2) + "\n";
}

}  // namespace specseq
