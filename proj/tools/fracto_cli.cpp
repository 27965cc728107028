#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fracto/expr.hpp"
#include "fracto/independence.hpp"
#include "fracto/randgen.hpp"
#include "fracto/spacefile.hpp"
#include "fracto/sphere.hpp"
#include "fracto/zline.hpp"

using namespace fracto;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string space_file;
  int cap = kDefaultEnumCap;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool quiet = false;
  bool unicode = false;
};

int default_cap() {
  if (const char* env = std::getenv("FRACTO_CAP")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw Error("FRACTO_CAP is not an integer");
    }
  }
  return kDefaultEnumCap;
}

void add_common(CLI::App* cmd, Common& c, bool needs_space) {
  auto* opt = cmd->add_option("--space", c.space_file, "space file (JSON)");
  if (needs_space) opt->required();
  cmd->add_option("--cap", c.cap, "enumeration cap (bits)");
  cmd->add_option("--seed", c.seed, "seed for randomized sweeps");
  cmd->add_option("--jobs", c.jobs, "worker count (reserved)");
  cmd->add_flag("--quiet", c.quiet, "print only the status");
  cmd->add_flag("--unicode", c.unicode, "pretty-print with math glyphs");
}

int emit(const Report& rep, const Common& c) {
  if (c.quiet) {
    std::cout << rep.status << "\n";
  } else {
    std::cout << report_to_json(rep).dump(2) << "\n";
  }
  return rep.passed() ? kExitPass : kExitFail;
}

Bits parse_set(const std::string& csv, int universe) {
  Bits out(universe);
  if (csv.empty()) return out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int v;
    try {
      v = std::stoi(item);
    } catch (const std::exception&) {
      throw Error("--set expects comma-separated integers");
    }
    if (v < 0 || v >= universe)
      throw OutOfRange("set element " + std::to_string(v) +
                       " outside the ground space");
    out.set(v);
  }
  return out;
}

std::string blocks_as_expr(const Fractoconvexity& f, bool unicode) {
  std::vector<FractoExpr> parts;
  for (const auto& b : f.blocks())
    parts.push_back(FractoExpr::frac(b.threshold, b.ids()));
  return print_expr(FractoExpr::join_of(std::move(parts)), unicode);
}

// ---------------------------------------------------------------------------
// proposition suites

Report suite_prop1(std::uint64_t seed, int trials) {
  Report rep;
  rep.name = "prop1";
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  long long done = 0;
  for (int t = 0; t < trials; ++t) {
    int n = 5 + t % 3;
    GroundSpace space(n, 2);
    int k = 2 + t % 2;
    auto pool = random_convexity_pool(space, rng, k);
    auto full = Fractoconvexity::single_block(pool, k);
    auto single = Fractoconvexity::single_block(
        {std::make_shared<Convexity>(intersect_convexities(pool))}, 1);
    SetFamily lhs = enumerate_members(full);
    SetFamily mid = enumerate_members(single);
    SetFamily rhs = enumerate_convex(*pool[0]);
    for (int i = 1; i < k; ++i)
      rhs = SetFamily::intersection(rhs, enumerate_convex(*pool[i]));
    if (!(lhs == mid) || !(lhs == rhs)) {
      rep.fail("trial " + std::to_string(t));
    }
    ++done;
  }
  rep.count("trials", done);
  rep.count("violations", static_cast<long long>(rep.witnesses.size()));
  return rep;
}

Report suite_props_i_iii(std::uint64_t seed, int trials) {
  Report rep;
  rep.name = "properties_i_ii_iii";
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  long long done = 0;
  for (int t = 0; t < trials; ++t) {
    GroundSpace space(6, 2);
    auto pool = random_convexity_pool(space, rng, 4);
    Fractoconvexity f1 = random_fracto(pool, rng);
    Fractoconvexity f2 = random_fracto(pool, rng);
    Fractoconvexity f3 = random_fracto(pool, rng);
    bool ok = per_b_equal(join(f1, f2), join(f2, f1)) &&
              per_b_equal(join(join(f1, f2), f3), join(f1, join(f2, f3))) &&
              per_b_equal(normalize(f1), f1);
    // (ii): the full block over the shorter prefix absorbs the longer one
    if (pool.size() >= 3) {
      auto shorter = Fractoconvexity::single_block({pool[0], pool[1]}, 2);
      auto longer =
          Fractoconvexity::single_block({pool[0], pool[1], pool[2]}, 3);
      ok = ok && family_equal(join(shorter, longer), shorter);
    }
    if (!ok) rep.fail("trial " + std::to_string(t));
    ++done;
  }
  rep.count("trials", done);
  rep.count("violations", static_cast<long long>(rep.witnesses.size()));
  return rep;
}

Report suite_prop2(std::uint64_t seed, int trials, const std::string& name,
                   bool distributive, bool absorption) {
  Report rep;
  rep.name = name;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  long long done = 0;
  for (int t = 0; t < trials; ++t) {
    GroundSpace space(6, 2);
    auto pool = random_convexity_pool(space, rng, 4);
    Fractoconvexity f1 = random_fracto(pool, rng);
    Fractoconvexity f2 = random_fracto(pool, rng);
    Fractoconvexity f3 = random_fracto(pool, rng);
    bool ok = true;
    if (distributive) {
      ok = ok &&
           family_equal(meet(join(f1, f2), f3),
                        join(meet(f1, f3), meet(f2, f3))) &&
           family_equal(join(meet(f1, f2), f3),
                        meet(join(f1, f3), join(f2, f3)));
    }
    if (absorption) {
      ok = ok && family_equal(meet(join(f1, f2), f1), f1) &&
           family_equal(join(meet(f1, f2), f1), f1);
    }
    if (!ok) rep.fail("trial " + std::to_string(t));
    ++done;
  }
  rep.count("trials", done);
  rep.count("violations", static_cast<long long>(rep.witnesses.size()));
  return rep;
}

Report suite_prop3(std::uint64_t seed, int wanted) {
  Report rep;
  rep.name = "prop3";
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  long long verified = 0, scanned = 0;
  for (int t = 0; t < wanted * 60 && verified < wanted; ++t) {
    GroundSpace space(6, 3);
    Convexity g1 = random_convexity(space, rng, "G1");
    Convexity g2 = random_convexity(space, rng, "G2");
    ++scanned;
    auto scan = is_conically_independent(g1, g2);
    if (!scan.independent) continue;
    Report sub = verify_prop3(g1, g2, scan);
    if (!sub.passed())
      for (const auto& w : sub.witnesses) rep.fail(w);
    ++verified;
  }
  if (verified < wanted)
    rep.fail("found only " + std::to_string(verified) +
             " conically independent pairs");
  rep.count("pairs_scanned", scanned);
  rep.count("pairs_verified", verified);
  rep.count("violations", static_cast<long long>(rep.witnesses.size()));
  return rep;
}

Report suite_prop4(std::uint64_t seed, int perms) {
  Report rep;
  rep.name = "prop4";
  rep.seed = seed;
  long long windows = 0, members = 0;
  for (int t = 0; t < perms; ++t) {
    int n = 6 + t % 9;
    ZLineModel model = build_zline(n, random_perm(n, seed + t));
    Report sub = check_prop4(model);
    if (!sub.passed())
      for (const auto& w : sub.witnesses) rep.fail(w);
    members += sub.count("members");
    ++windows;
  }
  rep.count("windows", windows);
  rep.count("members_total", members);
  rep.count("violations", static_cast<long long>(rep.witnesses.size()));
  return rep;
}

// ---------------------------------------------------------------------------
// gen helpers

json zline_space_json(int size, const std::vector<int>& perm) {
  json doc;
  doc["n"] = 2;
  doc["size"] = size;
  json p = json::array();
  for (int v : perm) p.push_back(v);
  doc["convexities"] = json::array(
      {json{{"id", "G1"}, {"kind", "interval"}},
       json{{"id", "G2"}, {"kind", "permuted_interval"}, {"perm", p}}});
  return doc;
}

std::vector<Vec3> parse_centers(const std::string& text) {
  std::vector<Vec3> out;
  std::stringstream ss(text);
  std::string triple;
  while (std::getline(ss, triple, ';')) {
    std::stringstream ts(triple);
    std::string coord;
    std::vector<double> vals;
    while (std::getline(ts, coord, ',')) vals.push_back(std::stod(coord));
    if (vals.size() != 3)
      throw Error("--centers expects x,y,z triples separated by ';'");
    out.push_back({vals[0], vals[1], vals[2]});
  }
  if (out.empty()) throw Error("--centers needs at least one vertex");
  return out;
}

json sphere_space_json(const SphereModel& model) {
  json doc;
  doc["n"] = 2;
  doc["size"] = model.point_count();
  json pts = json::array();
  for (const auto& p : model.points())
    pts.push_back(json::array({p.x, p.y, p.z}));
  doc["convexities"] = json::array();
  for (std::size_t c = 0; c < model.centers().size(); ++c) {
    const Vec3& v = model.centers()[c];
    doc["convexities"].push_back(
        json{{"id", "G_c" + std::to_string(c)},
             {"kind", "robinson"},
             {"points", pts},
             {"center", json::array({v.x, v.y, v.z})},
             {"tol", model.tol()}});
  }
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-model engine for fractoconvexities"};
  app.require_subcommand(1);

  Common common;
  try {
    common.cap = default_cap();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  // validate
  Common c_validate = common;
  auto* validate = app.add_subcommand("validate", "load a space file and check every convexity");
  add_common(validate, c_validate, true);

  // hull
  Common c_hull = common;
  std::string hull_conv, hull_set;
  auto* hull = app.add_subcommand("hull", "hull of a set under one convexity");
  add_common(hull, c_hull, true);
  hull->add_option("--conv", hull_conv, "convexity id")->required();
  hull->add_option("--set", hull_set, "comma-separated element ids")->required();

  // member
  Common c_member = common;
  std::string member_expr, member_set;
  auto* member = app.add_subcommand("member", "membership of a set in a fracto-expression");
  add_common(member, c_member, true);
  member->add_option("--expr", member_expr, "fracto expression")->required();
  member->add_option("--set", member_set, "comma-separated element ids")->required();

  // enumerate
  Common c_enum = common;
  std::string enum_expr;
  auto* enumerate = app.add_subcommand("enumerate", "all members of a fracto-expression");
  add_common(enumerate, c_enum, true);
  enumerate->add_option("--expr", enum_expr, "fracto expression")->required();

  // eq
  Common c_eq = common;
  std::string eq_e1, eq_e2;
  bool eq_per_b = false;
  auto* eq = app.add_subcommand("eq", "extensional equality of two expressions");
  add_common(eq, c_eq, true);
  eq->add_option("--e1", eq_e1, "first expression")->required();
  eq->add_option("--e2", eq_e2, "second expression")->required();
  eq->add_flag("--per-b", eq_per_b, "require representation-level equivalence");

  // normalize
  Common c_norm = common;
  std::string norm_expr;
  auto* norm = app.add_subcommand("normalize", "full-block normal form of an expression");
  add_common(norm, c_norm, true);
  norm->add_option("--expr", norm_expr, "fracto expression")->required();

  // independence
  Common c_indep = common;
  std::string indep_ids;
  auto* indep = app.add_subcommand("independence", "independence domain of the space's convexities");
  add_common(indep, c_indep, true);
  indep->add_option("--ids", indep_ids, "comma-separated convexity ids (default: all)");

  // conical
  Common c_conical = common;
  std::string conical_g1, conical_g2;
  int conical_samples = 2000;
  bool conical_sampled = false;
  auto* conical = app.add_subcommand("conical", "conical-independence scan for a pair");
  add_common(conical, c_conical, true);
  conical->add_option("--g1", conical_g1, "first convexity id")->required();
  conical->add_option("--g2", conical_g2, "second convexity id")->required();
  conical->add_flag("--sampled", conical_sampled, "sampled scan for large spaces");
  conical->add_option("--samples", conical_samples, "sample count for --sampled");

  // prop-check
  Common c_prop = common;
  std::string prop_name;
  int prop_trials = 0;
  auto* prop = app.add_subcommand("prop-check", "randomized proposition suites");
  add_common(prop, c_prop, false);
  prop->add_option("--prop", prop_name, "one of 1,2,3,4,abs,iii,lattice")->required();
  prop->add_option("--trials", prop_trials, "trial count (suite default if omitted)");

  // gen
  auto* gen = app.add_subcommand("gen", "space file generators");
  gen->require_subcommand(1);

  Common c_genz = common;
  int genz_size = 8;
  std::string genz_perm = "random";
  auto* gen_zline = gen->add_subcommand("zline", "integer window with a permuted interval convexity");
  add_common(gen_zline, c_genz, false);
  gen_zline->add_option("--size", genz_size, "window size");
  gen_zline->add_option("--perm", genz_perm, "identity|reversal|random|comma list");

  Common c_gens = common;
  int gens_points = 80;
  std::string gens_centers = "0,0,0.3";
  double gens_tol = 0.0;
  auto* gen_sphere = gen->add_subcommand("sphere", "discretized sphere with cone convexities");
  add_common(gen_sphere, c_gens, false);
  gen_sphere->add_option("--points", gens_points, "sample point count");
  gen_sphere->add_option("--centers", gens_centers, "x,y,z triples separated by ';'");
  gen_sphere->add_option("--tol", gens_tol, "segment tolerance (default: from spacing)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*validate) {
      Registry reg = load_space_file(c_validate.space_file);
      Report rep;
      rep.name = "validate";
      long long checked = 0;
      for (const auto& id : reg.ids()) {
        AxiomReport ax = check_axioms(*reg.get(id), c_validate.cap,
                                      c_validate.seed);
        ++checked;
        if (!ax.all_ok())
          rep.fail("convexity " + id + " fails the hull axioms");
      }
      rep.count("convexities", checked);
      rep.seed = c_validate.seed;
      return emit(rep, c_validate);
    }

    if (*hull) {
      Registry reg = load_space_file(c_hull.space_file);
      auto conv = reg.get(hull_conv);
      Bits a = parse_set(hull_set, reg.space().size);
      Bits h = conv->hull(a);
      Report rep;
      rep.name = "hull";
      rep.status = "info";
      rep.witnesses.push_back(h.str());
      rep.count("input_size", a.count());
      rep.count("hull_size", h.count());
      return emit(rep, c_hull);
    }

    if (*member) {
      Registry reg = load_space_file(c_member.space_file);
      Fractoconvexity f = eval_expr(parse_expr(member_expr), reg);
      Bits a = parse_set(member_set, reg.space().size);
      Report rep;
      rep.name = "member";
      rep.status = "info";
      rep.witnesses.push_back(f.member(a) ? "true" : "false");
      return emit(rep, c_member);
    }

    if (*enumerate) {
      Registry reg = load_space_file(c_enum.space_file);
      Fractoconvexity f = eval_expr(parse_expr(enum_expr), reg);
      SetFamily fam = enumerate_members(f, c_enum.cap);
      Report rep;
      rep.name = "enumerate";
      rep.status = "info";
      rep.count("members", static_cast<long long>(fam.size()));
      if (c_enum.quiet) {
        std::cout << rep.status << "\n";
      } else {
        json j = report_to_json(rep);
        j["family"] = family_to_json(fam);
        std::cout << j.dump(2) << "\n";
      }
      return kExitPass;
    }

    if (*eq) {
      Registry reg = load_space_file(c_eq.space_file);
      Fractoconvexity f1 = eval_expr(parse_expr(eq_e1), reg);
      Fractoconvexity f2 = eval_expr(parse_expr(eq_e2), reg);
      bool equal = eq_per_b ? per_b_equal(f1, f2, c_eq.cap)
                            : family_equal(f1, f2, c_eq.cap);
      Report rep;
      rep.name = "eq";
      if (!equal) rep.fail("expressions disagree on some subset");
      return emit(rep, c_eq);
    }

    if (*norm) {
      Registry reg = load_space_file(c_norm.space_file);
      Fractoconvexity f = eval_expr(parse_expr(norm_expr), reg);
      Fractoconvexity n = normalize(f);
      Report rep;
      rep.name = "normalize";
      rep.status = "info";
      rep.witnesses.push_back(blocks_as_expr(n, c_norm.unicode));
      rep.count("blocks", static_cast<long long>(n.blocks().size()));
      return emit(rep, c_norm);
    }

    if (*indep) {
      Registry reg = load_space_file(c_indep.space_file);
      std::vector<ConvPtr> convs;
      if (indep_ids.empty()) {
        for (const auto& id : reg.ids()) convs.push_back(reg.get(id));
      } else {
        std::stringstream ss(indep_ids);
        std::string id;
        while (std::getline(ss, id, ',')) convs.push_back(reg.get(id));
      }
      IndependenceReport ir = independence_domain(convs, c_indep.cap);
      Report rep;
      rep.name = "independence";
      rep.count("domain", static_cast<long long>(ir.domain.size()));
      rep.count("violations", static_cast<long long>(ir.violations.size()));
      for (const auto& [a, ph] : ir.violations)
        rep.fail("A=" + a.str() + " pair-hull=" + ph.str());
      return emit(rep, c_indep);
    }

    if (*conical) {
      Registry reg = load_space_file(c_conical.space_file);
      auto g1 = reg.get(conical_g1);
      auto g2 = reg.get(conical_g2);
      ConicalResult res =
          conical_sampled
              ? conical_scan_sampled(*g1, *g2, c_conical.seed, conical_samples)
              : is_conically_independent(*g1, *g2, c_conical.cap);
      Report rep;
      rep.name = "conical";
      rep.seed = res.seed;
      rep.count("instances", res.instances);
      rep.count("exhaustive", res.exhaustive ? 1 : 0);
      if (!res.independent) {
        std::string w = "prefix={";
        for (int e : res.witness->prefix) w += std::to_string(e) + ",";
        w += "} last=" + std::to_string(res.witness->last) +
             " x=" + std::to_string(res.witness->unreachable);
        rep.fail(w);
      }
      return emit(rep, c_conical);
    }

    if (*prop) {
      Report rep;
      if (prop_name == "1") {
        rep = suite_prop1(c_prop.seed, prop_trials > 0 ? prop_trials : 200);
      } else if (prop_name == "2") {
        rep = suite_prop2(c_prop.seed, prop_trials > 0 ? prop_trials : 500,
                          "prop2", true, false);
      } else if (prop_name == "abs") {
        rep = suite_prop2(c_prop.seed, prop_trials > 0 ? prop_trials : 500,
                          "absorption", false, true);
      } else if (prop_name == "iii") {
        rep = suite_props_i_iii(c_prop.seed,
                                prop_trials > 0 ? prop_trials : 200);
      } else if (prop_name == "lattice") {
        rep = suite_prop2(c_prop.seed, prop_trials > 0 ? prop_trials : 500,
                          "lattice", true, true);
      } else if (prop_name == "3") {
        rep = suite_prop3(c_prop.seed, prop_trials > 0 ? prop_trials : 20);
      } else if (prop_name == "4") {
        rep = suite_prop4(c_prop.seed, prop_trials > 0 ? prop_trials : 50);
      } else {
        throw Error("unknown --prop value '" + prop_name + "'");
      }
      return emit(rep, c_prop);
    }

    if (*gen_zline) {
      std::vector<int> perm;
      if (genz_perm == "identity") {
        perm = identity_perm(genz_size);
      } else if (genz_perm == "reversal") {
        perm = reversal_perm(genz_size);
      } else if (genz_perm == "random") {
        perm = random_perm(genz_size, c_genz.seed);
      } else {
        std::stringstream ss(genz_perm);
        std::string item;
        while (std::getline(ss, item, ',')) perm.push_back(std::stoi(item));
      }
      build_zline(genz_size, perm);  // validates
      std::cout << zline_space_json(genz_size, perm).dump(2) << "\n";
      return kExitPass;
    }

    if (*gen_sphere) {
      SphereModel model = SphereModel::fibonacci(
          gens_points, parse_centers(gens_centers), gens_tol);
      std::cout << sphere_space_json(model).dump(2) << "\n";
      return kExitPass;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  return kExitUsage;
}
