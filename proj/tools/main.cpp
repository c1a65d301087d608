// Command line front end: classify / enumerate / verify.
//
// Exit codes: 0 success, 1 negative result (empty set, failed check, no
// witness), 2 usage error, 3 precision budget exhausted.

#include <cstdint>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gl3adlv/adlv.hpp"

using nlohmann::json;
using namespace gl3;

namespace {

struct CommonOpts {
  std::string b_str = "1";
  std::string lambda_str;
  std::string q_str = "2";
  int m = 1;
  int prec = 16;
  int N = 2;
  int eta = 0;
  std::uint64_t seed = 1;
  int samples = 200;
  int shards = 1;
  std::string format = "json";
};

void add_common(CLI::App* app, CommonOpts& o, bool need_lambda) {
  app->add_option("--b", o.b_str, "basic class: 1, b1 or b2");
  auto* l = app->add_option("--lambda", o.lambda_str,
                            "dominant cocharacter m1,m2,m3");
  if (need_lambda) l->required();
  app->add_option("--q", o.q_str, "base field size, P or P^S with P prime");
  app->add_option("--m", o.m, "extension degree of the coefficient field");
  app->add_option("--prec", o.prec, "initial t-adic working precision");
  app->add_option("--N", o.N, "lattice shell radius");
  app->add_option("--eta", o.eta, "determinant valuation of the shell");
  app->add_option("--seed", o.seed, "seed for the deterministic generator");
  app->add_option("--samples", o.samples, "sample/attempt budget");
  app->add_option("--shards", o.shards, "number of enumeration shards");
  app->add_option("--format", o.format, "output format: json or tsv")
      ->check(CLI::IsMember({"json", "tsv"}));
}

int parse_q(const std::string& s, int& p, int& spow) {
  auto caret = s.find('^');
  try {
    if (caret == std::string::npos) {
      p = std::stoi(s);
      spow = 1;
    } else {
      p = std::stoi(s.substr(0, caret));
      spow = std::stoi(s.substr(caret + 1));
    }
  } catch (...) {
    return -1;
  }
  if (p < 2 || spow < 1) return -1;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return -1;
  return 0;
}

int parse_lambda(const std::string& s, Cocharacter& lam) {
  std::istringstream is(s);
  std::string tok;
  std::vector<int> v;
  while (std::getline(is, tok, ',')) {
    try {
      v.push_back(std::stoi(tok));
    } catch (...) {
      return -1;
    }
  }
  if (v.size() != 3) return -1;
  lam = Cocharacter(v[0], v[1], v[2]);
  if (!lam.dominant()) return -1;
  return 0;
}

void emit(const json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  // tsv: flatten scalar fields, one key<TAB>value line, arrays joined by ';'
  std::function<void(const std::string&, const json&)> walk =
      [&](const std::string& prefix, const json& v) {
        if (v.is_object()) {
          for (auto it = v.begin(); it != v.end(); ++it)
            walk(prefix.empty() ? it.key() : prefix + "." + it.key(),
                 it.value());
        } else if (v.is_array()) {
          std::ostringstream os;
          for (size_t i = 0; i < v.size(); ++i) {
            if (i) os << ";";
            if (v[i].is_string())
              os << v[i].get<std::string>();
            else
              os << v[i].dump();
          }
          std::cout << prefix << "\t" << os.str() << "\n";
        } else if (v.is_string()) {
          std::cout << prefix << "\t" << v.get<std::string>() << "\n";
        } else {
          std::cout << prefix << "\t" << v.dump() << "\n";
        }
      };
  walk("", j);
}

json mentry_json(const Cocharacter& lam, const BasicB& b, const MEntry& me,
                 int q, int m) {
  Geometry g = component_geometry(lam, b, me);
  return json{{"mu", me.cls.str()},
              {"m_I", me.m_I},
              {"m_II", me.m_II},
              {"m_III", me.m_III},
              {"anchor_type", me.anchor_type()},
              {"geometry", g.str()},
              {"predicted_count", predicted_count(g, q, m)}};
}

int run_classify(const CommonOpts& o) {
  int p, spow;
  if (parse_q(o.q_str, p, spow) != 0) {
    std::cerr << "bad --q\n";
    return 2;
  }
  Cocharacter lam;
  if (parse_lambda(o.lambda_str, lam) != 0) {
    std::cerr << "bad --lambda (need dominant m1,m2,m3)\n";
    return 2;
  }
  auto tag = parse_btag(o.b_str);
  if (!tag) {
    std::cerr << "bad --b\n";
    return 2;
  }
  BasicB b{*tag};
  int q = 1;
  for (int i = 0; i < spow; ++i) q *= p;

  NonEmpty ne = nonempty(lam, b);
  json out{{"b", to_string(b.tag)},
           {"lambda", lam.str()},
           {"eta", b.eta()},
           {"defect", b.defect()},
           {"nonempty", ne.value},
           {"reason", ne.reason}};
  if (ne.value) {
    out["dimension"] = dimension(lam, b);
    json M = json::array(), Mp = json::array();
    for (auto& me : compute_M(lam, b)) M.push_back(mentry_json(lam, b, me, q, o.m));
    for (auto& me : compute_M_prime(lam, b))
      Mp.push_back(mentry_json(lam, b, me, q, o.m));
    out["M"] = M;
    out["M_prime"] = Mp;
    FibrationCase fc = fibration_case(lam, b);
    out["fibration"] = json{{"value", fc.value}, {"family", fc.family}, {"r", fc.r}};
    if (o.samples > 0) {
      FieldCtx F(p, spow, o.m);
      auto w = find_point(lam, b, F, o.seed, o.samples);
      out["witness"] = w ? json(w->str()) : json(nullptr);
    }
  }
  emit(out, o.format);
  return ne.value ? 0 : 1;
}

int run_enumerate(const CommonOpts& o) {
  int p, spow;
  if (parse_q(o.q_str, p, spow) != 0) {
    std::cerr << "bad --q\n";
    return 2;
  }
  Cocharacter lam;
  if (parse_lambda(o.lambda_str, lam) != 0) {
    std::cerr << "bad --lambda\n";
    return 2;
  }
  auto tag = parse_btag(o.b_str);
  if (!tag) {
    std::cerr << "bad --b\n";
    return 2;
  }
  BasicB b{*tag};
  FieldCtx F(p, spow, o.m);
  std::vector<std::string> pts;
  enumerate_points(lam, b, F, o.N, o.eta,
                   [&](const Vertex& v) { pts.push_back(v.str()); }, o.shards);
  std::sort(pts.begin(), pts.end());
  json out{{"b", to_string(b.tag)},   {"lambda", lam.str()},
           {"q", o.q_str},            {"m", o.m},
           {"N", o.N},                {"eta", o.eta},
           {"count", pts.size()},     {"points", pts}};
  emit(out, o.format);
  return pts.empty() ? 1 : 0;
}

// property checks shared with the test suite, sized by --samples
int run_verify(const CommonOpts& o) {
  int p, spow;
  if (parse_q(o.q_str, p, spow) != 0) {
    std::cerr << "bad --q\n";
    return 2;
  }
  FieldCtx F(p, spow, o.m);
  CounterRng rng(o.seed, 2);
  int prec = o.prec;
  auto rnd_series = [&](int lo, int hi) {
    std::vector<std::pair<int, felem>> terms;
    for (int e = lo; e < hi; ++e) terms.emplace_back(e, F.sample(rng.next()));
    return TSeries::from_terms(F, terms, prec);
  };
  auto rnd_unit_mat = [&]() {
    for (;;) {
      Mat3 k(F, prec);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) k.at(i, j) = rnd_series(0, 3);
      try {
        if (k.det().valuation() == 0) return k;
      } catch (const InsufficientPrecision&) {
      }
    }
  };
  auto rnd_lambda = [&](int lim) {
    int a = int(rng.next() % (2 * lim + 1)) - lim;
    int b2 = int(rng.next() % (2 * lim + 1)) - lim;
    int c = int(rng.next() % (2 * lim + 1)) - lim;
    std::array<int, 3> v{a, b2, c};
    std::sort(v.begin(), v.end(), std::greater<>());
    return Cocharacter(v);
  };

  std::map<std::string, bool> results;

  // smith recovers the diagonal of k1 t^lam k2
  {
    bool ok = true;
    for (int i = 0; i < o.samples && ok; ++i) {
      Cocharacter lam = rnd_lambda(3);
      Mat3 g = rnd_unit_mat() * Mat3::diag_t(F, lam.m, prec) * rnd_unit_mat();
      ok = Cocharacter(smith_decompose(g).lambda) == lam;
    }
    results["inv-oracle"] = ok;
  }
  // decomposition reconstructs the input on the visible window
  {
    bool ok = true;
    for (int i = 0; i < o.samples && ok; ++i) {
      Mat3 g = rnd_unit_mat() * Mat3::diag_t(F, rnd_lambda(3).m, prec) *
               rnd_unit_mat();
      SmithResult s = smith_decompose(g);
      Mat3 back = s.k1 * Mat3::diag_t(F, s.lambda, prec) * s.k2;
      ok = back.equals_window(g);
    }
    results["decomposition"] = ok;
  }
  // shell point count of a small variety matches the component prediction
  {
    BasicB b{BTag::b1};
    Cocharacter lam(1, 0, 0);
    std::uint64_t n = 0;
    enumerate_points(lam, b, F, 1, 1, [&](const Vertex&) { ++n; }, o.shards);
    int q = 1;
    for (int i = 0; i < spow; ++i) q *= p;
    std::uint64_t want = 0;
    for (auto& me : compute_M_prime(lam, b))
      want += predicted_count(component_geometry(lam, b, me), q, o.m);
    results["counts"] = (n == want);
  }
  // membership is stable under the eta-level shift
  {
    bool ok = true;
    for (auto tagv : {BTag::one, BTag::b1, BTag::b2}) {
      BasicB b{tagv};
      Cocharacter lam(1 + b.eta(), 0, -1);
      for (int i = 0; i < std::max(1, o.samples / 8) && ok; ++i) {
        auto w = find_point(lam, b, F, o.seed + i, 40);
        if (!w) continue;
        Vertex shifted = with_precision_retry(prec, [&](int pr) {
          return vertex_of(b.shift_a1(F, pr) * w->basis(pr));
        });
        ok = membership(shifted, lam, b);
      }
    }
    results["eta-shift"] = ok;
  }
  // membership agrees after a central twist of lambda and b
  {
    bool ok = true;
    for (int i = 0; i < o.samples && ok; ++i) {
      Mat3 g = rnd_unit_mat();
      Vertex P = vertex_of(g * Mat3::diag_t(F, rnd_lambda(2).m, prec));
      Cocharacter lam = rnd_lambda(2);
      BasicB b{BTag(i % 3)};
      Cocharacter adj(lam.m[0], lam.m[1],
                      b.eta() - lam.m[0] - lam.m[1]);
      if (!adj.dominant()) continue;
      ok = central_shift_check(P, adj, b, int(rng.next() % 5) - 2);
    }
    results["central-shift"] = ok;
  }
  // the label recovery inverts the stratum tables on every anchor class
  {
    bool ok = true;
    for (int i = 0; i < o.samples && ok; ++i) {
      BasicB b{BTag(i % 3)};
      Cocharacter lam = rnd_lambda(4);
      if (lam.sum() != b.eta()) continue;
      for (auto& me : compute_M(lam, b)) {
        int m2 = lam.m[1];
        Position pos;
        int j = 0;
        switch (b.tag) {
          case BTag::one:
            pos = m2 == 0 ? Position::I : (m2 < 0 ? Position::II : Position::III);
            j = std::abs(m2);
            break;
          case BTag::b1:
            pos = m2 < 0 ? Position::D_II : (m2 == 0 ? Position::D_I : Position::II);
            j = std::abs(m2);
            break;
          case BTag::b2:
            pos = m2 > 1 ? Position::Dp_III : (m2 == 1 ? Position::Dp_I : Position::III);
            j = std::abs(m2 - 1);
            break;
        }
        ok = ok && stratum_lambda(me.cls, pos, j, b) == lam;
      }
    }
    results["m-sets"] = ok;
  }

  json out;
  bool all = true;
  for (auto& [k, v] : results) {
    out[k] = v ? "pass" : "fail";
    all = all && v;
  }
  emit(out, o.format);
  return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"affine Deligne-Lusztig sets for GL3, basic b"};
  app.require_subcommand(1);
  CommonOpts oc, oe, ov;
  CLI::App* c = app.add_subcommand("classify",
                                   "non-emptiness, dimension, components");
  add_common(c, oc, true);
  CLI::App* e = app.add_subcommand("enumerate", "lattice-shell points");
  add_common(e, oe, true);
  CLI::App* v = app.add_subcommand("verify", "randomized property checks");
  add_common(v, ov, false);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    int code = app.exit(ex);
    return code == 0 ? 0 : 2;
  }
  try {
    if (app.got_subcommand(c)) return run_classify(oc);
    if (app.got_subcommand(e)) return run_enumerate(oe);
    return run_verify(ov);
  } catch (const InsufficientPrecision&) {
    std::cerr << "precision budget exhausted\n";
    return 3;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
