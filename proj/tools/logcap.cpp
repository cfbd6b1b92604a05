// logcap command line: capacities, derivatives, support geometry, SLC checks and
// inequality verification, emitting JSON reports.
//
// Exit codes: 0 ok, 1 error, 2 a guaranteed-class check was violated.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "logcap/logcap.hpp"

namespace fs = std::filesystem;
using namespace logcap;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  double tol = 1e-10;
  std::string out;
  std::string format = "json";
};

struct Context {
  Globals globals;
  fs::path base;  // relative input paths resolve against this
  CommandResult result;
  bool ran = false;
  std::string manifest;  // set by `run`
};

fs::path resolve(const Context& ctx, const std::string& p) {
  fs::path path(p);
  return path.is_relative() && !ctx.base.empty() ? ctx.base / path : path;
}

PolyInput load_poly(const Context& ctx, const std::string& p) {
  const fs::path path = resolve(ctx, p);
  PolyInput in = poly_from_json(read_json_file(path.string()));
  if (in.name.empty()) in.name = path.stem().string();
  return in;
}

BoundKind parse_kind(const std::string& k, const SparsePoly& p) {
  if (k == "entire") return BoundKind::entire;
  if (k == "homogeneous") return BoundKind::homogeneous;
  if (k == "polynomial") return BoundKind::polynomial;
  if (k == "auto") {
    const auto d = p.homogeneous_degree();
    return d && static_cast<std::size_t>(*d) == p.num_vars() ? BoundKind::homogeneous : BoundKind::entire;
  }
  throw std::invalid_argument("unknown kind: " + k);
}

void add_globals(CLI::App& app, Globals& g) {
  app.fallthrough();
  app.add_option("--seed", g.seed, "root seed for every sampled operation");
  app.add_option("--tol", g.tol, "capacity solver tolerance");
  app.add_option("--out", g.out, "write the report here instead of stdout");
  app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"json"}));
}

// Registers the commands; each callback stores its records in ctx.result.
void add_commands(CLI::App& app, Context& ctx) {
  auto done = [&ctx](CommandResult r) {
    ctx.result.merge(std::move(r));
    ctx.ran = true;
  };

  {
    auto* c = app.add_subcommand("cap", "capacity inf p(x) / prod (x_i/r_i)^{r_i}");
    auto poly = std::make_shared<std::string>();
    auto target = std::make_shared<std::string>();
    auto unscaled = std::make_shared<bool>(false);
    c->add_option("--poly", *poly)->required();
    c->add_option("--target", *target, "comma separated rationals; default all ones");
    c->add_flag("--unscaled", *unscaled, "use inf p(x) / prod x_i^{r_i}");
    c->callback([=, &ctx] {
      std::optional<RationalPoint> t;
      if (!target->empty()) t = parse_rational_list(*target);
      done(cmd_cap(load_poly(ctx, *poly), t, *unscaled, ctx.globals.tol));
    });
  }
  {
    auto* c = app.add_subcommand("cfr", "C_f(R) with its Der sandwich");
    auto poly = std::make_shared<std::string>();
    auto target = std::make_shared<std::string>();
    c->add_option("--poly", *poly)->required();
    c->add_option("--target", *target)->required();
    c->callback([=, &ctx] { done(cmd_cfr(load_poly(ctx, *poly), parse_multi_index(*target), ctx.globals.tol)); });
  }
  {
    auto* c = app.add_subcommand("der", "exact mixed derivative at zero");
    auto poly = std::make_shared<std::string>();
    auto target = std::make_shared<std::string>();
    c->add_option("--poly", *poly)->required();
    c->add_option("--target", *target)->required();
    c->callback([=, &ctx] { done(cmd_der(load_poly(ctx, *poly), parse_multi_index(*target))); });
  }
  {
    auto* c = app.add_subcommand("slc", "sampled strong log-concavity check");
    auto poly = std::make_shared<std::string>();
    auto samples = std::make_shared<std::size_t>(200);
    c->add_option("--poly", *poly)->required();
    c->add_option("--samples", *samples);
    c->callback([=, &ctx] { done(cmd_slc(load_poly(ctx, *poly), *samples, ctx.globals.seed)); });
  }
  {
    auto* c = app.add_subcommand("dconvex", "lattice convexity of the support");
    auto poly = std::make_shared<std::string>();
    c->add_option("--poly", *poly)->required();
    c->callback([=, &ctx] { done(cmd_dconvex(load_poly(ctx, *poly))); });
  }
  {
    auto* c = app.add_subcommand("rado", "Hall-Rado support test and submodularity of Deg");
    auto poly = std::make_shared<std::string>();
    c->add_option("--poly", *poly)->required();
    c->callback([=, &ctx] { done(cmd_rado(load_poly(ctx, *poly))); });
  }
  {
    auto* c = app.add_subcommand("propagate", "LC trajectory of the moments under exp(tS)");
    auto weights = std::make_shared<std::string>();
    auto poly = std::make_shared<std::string>();
    auto grid = std::make_shared<std::string>("0,1/2,1,2,5");
    c->add_option("--weights", *weights)->required();
    c->add_option("--poly", *poly)->required();
    c->add_option("--grid", *grid);
    c->callback([=, &ctx] {
      done(cmd_propagate(weights_from_json(read_json_file(resolve(ctx, *weights).string())), load_poly(ctx, *poly),
                         parse_rational_list(*grid)));
    });
  }
  {
    auto* c = app.add_subcommand("verify", "bound verification on a suite or one polynomial");
    auto suite = std::make_shared<std::string>();
    auto poly = std::make_shared<std::string>();
    auto kind = std::make_shared<std::string>("auto");
    auto* s = c->add_option("--suite", *suite, "all, or one of the built-in suites");
    auto* p = c->add_option("--poly", *poly);
    s->excludes(p);
    c->add_option("--kind", *kind)->check(CLI::IsMember({"auto", "entire", "homogeneous", "polynomial"}));
    c->callback([=, &ctx] {
      if (!suite->empty()) {
        done(run_suite(*suite, ctx.globals.seed, ctx.globals.tol));
      } else if (!poly->empty()) {
        PolyInput in = load_poly(ctx, *poly);
        done(cmd_verify_poly(in, parse_kind(*kind, in.poly), ctx.globals.tol));
      } else {
        throw CLI::ValidationError("verify needs --suite or --poly");
      }
    });
  }
  {
    auto* c = app.add_subcommand("perm", "exact permanent and Van der Waerden bounds");
    auto matrix = std::make_shared<std::string>();
    auto check = std::make_shared<std::string>();
    auto scale = std::make_shared<bool>(false);
    c->add_option("--matrix", *matrix)->required();
    c->add_option("--check", *check)->check(CLI::IsMember({"vdw"}));
    c->add_flag("--sinkhorn", *scale, "scale to doubly stochastic first");
    c->callback([=, &ctx] {
      done(cmd_perm(matrix_from_json(read_json_file(resolve(ctx, *matrix).string())), *check == "vdw", *scale,
                    ctx.globals.tol));
    });
  }
  {
    auto* c = app.add_subcommand("inner", "inner product lower bounds");
    auto p = std::make_shared<std::string>();
    auto q = std::make_shared<std::string>();
    auto l = std::make_shared<std::string>();
    c->add_option("--poly", *p)->required();
    c->add_option("--poly2", *q)->required();
    c->add_option("--l", *l, "comma separated rationals; default all ones");
    c->callback([=, &ctx] {
      PolyInput a = load_poly(ctx, *p), b = load_poly(ctx, *q);
      RationalPoint lv = l->empty() ? RationalPoint(a.poly.num_vars(), Rational(1)) : parse_rational_list(*l);
      done(cmd_inner(a, b, lv, ctx.globals.tol));
    });
  }
}

int run_cli(CLI::App& app, std::vector<std::string> args) {
  std::reverse(args.begin(), args.end());
  app.parse(args);
  return 0;
}

// Executes a manifest {"seed": s, "tol": t, "out": path, "commands": [[argv...], ...]}.
void run_manifest(Context& ctx) {
  const fs::path path(ctx.manifest);
  const Json m = read_json_file(path.string());
  if (!m.is_object()) throw FormatError(path.string() + ": manifest must be an object");
  Globals g = ctx.globals;
  if (m.contains("seed")) g.seed = m.at("seed").get<std::uint64_t>();
  if (m.contains("tol")) g.tol = m.at("tol").get<double>();
  if (m.contains("out") && g.out.empty()) g.out = (path.parent_path() / m.at("out").get<std::string>()).string();
  ctx.globals.out = g.out;
  if (!m.contains("commands")) return;
  std::size_t k = 0;
  for (const auto& cmd : m.at("commands")) {
    if (!cmd.is_array() || cmd.empty()) throw FormatError("manifest command " + std::to_string(k) + " must be a non-empty array");
    std::vector<std::string> argv;
    for (const auto& a : cmd) argv.push_back(a.get<std::string>());
    Context sub;
    sub.globals = g;
    sub.base = path.parent_path();
    CLI::App app{"logcap"};
    app.require_subcommand(1);
    add_globals(app, sub.globals);
    add_commands(app, sub);
    run_cli(app, argv);
    ctx.result.merge(std::move(sub.result));
    ++k;
  }
}

void emit(const Context& ctx) {
  const std::string text = ctx.result.records.dump(2) + "\n";
  if (ctx.globals.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(ctx.globals.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + ctx.globals.out);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  Context ctx;
  CLI::App app{"logcap: executable capacity and log-concavity checks"};
  app.require_subcommand(1);
  add_globals(app, ctx.globals);
  add_commands(app, ctx);
  auto* run = app.add_subcommand("run", "execute a manifest of commands");
  run->add_option("manifest", ctx.manifest)->required();
  try {
    app.parse(argc, argv);
    if (!ctx.manifest.empty()) run_manifest(ctx);
    emit(ctx);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "logcap: " << e.what() << "\n";
    return 1;
  }
  return ctx.result.guaranteed_violation ? 2 : 0;
}
