// effham: effective Hamiltonians from the command line.
//
//   effham effective1d --hamiltonian '{"type":"quadratic"}' --potential '{"type":"sawtooth","s":0.5}' --p-grid 0:3:0.1
//   effham pplus --s 0.2,0.5,0.8
//   effham hill --potential '{"type":"fourier","coeffs":[[1,-0.5,0],[-1,-0.5,0]]}' --p-grid 0:3:0.1
//   effham asympt --potential '{"type":"fourier","dim":2,"coeffs":[[1,0,0.5,0],[-1,0,0.5,0]]}' --Q-preset golden
//   effham cdf --potential '{"type":"preset","name":"vhat2"}'
//   effham cellpde --hamiltonian '{"type":"nonconvexF"}' --p-grid 1.5:1.8:0.05 --N 400
//   effham verify all
//
// Exit codes: 0 success, 1 numeric failure or failed check, 2 usage error.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "effham/asympt.hpp"
#include "effham/cellpde.hpp"
#include "effham/descriptors.hpp"
#include "effham/errors.hpp"
#include "effham/experiments.hpp"
#include "effham/hill.hpp"
#include "effham/inviscid1d.hpp"
#include "effham/output.hpp"

using namespace effham;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("cannot parse number '" + item + "' in list '" + text + "'");
    }
  }
  return out;
}

// start:stop:step, or a comma list
std::vector<double> parse_grid(const std::string& text) {
  if (text.find(':') == std::string::npos) return parse_list(text);
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(parse_list(item).at(0));
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
    throw UsageError("grid must be start:stop:step with step > 0 and stop >= start");
  return linear_grid(parts[0], parts[1], parts[2]);
}

std::string out_dir(const std::string& flag) {
  if (const char* env = std::getenv("EFFHAM_OUT"); env && *env) return env;
  return flag;
}

void print_csv(const CsvTable& t) { std::cout << t.str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective Hamiltonians for H(p) + V(x) with 1-periodic V"};
  app.require_subcommand(1);

  std::string potential = R"({"type":"sawtooth","s":0.5})";
  std::string potential2;
  std::string hamiltonian = R"({"type":"quadratic"})";
  std::string p_grid = "0:3:0.1";
  std::string s_list;
  std::string lambda_grid;
  std::string Q_preset = "golden";
  std::string flux = "godunov";
  std::string out = "effham-out";
  int N = 400, K = 32, steps = 64, resolution = 4096, lambda_points = 101;
  double T = 60.0, d = 0.0, lambda_min = NAN, lambda_max = NAN;
  bool viscous = false;

  auto add_potential = [&](CLI::App* c) { c->add_option("--potential", potential, "potential descriptor (JSON)"); };
  auto add_ham = [&](CLI::App* c) { c->add_option("--hamiltonian", hamiltonian, "Hamiltonian descriptor (JSON)"); };
  auto add_pgrid = [&](CLI::App* c) { c->add_option("--p-grid", p_grid, "start:stop:step or comma list"); };

  auto* eff = app.add_subcommand("effective1d", "exact Hbar for a quasi-convex H");
  add_potential(eff);
  add_ham(eff);
  add_pgrid(eff);

  auto* pplus = app.add_subcommand("pplus", "flat piece edges");
  add_potential(pplus);
  pplus->add_option("--hamiltonian", hamiltonian, "Hamiltonian descriptor (JSON)")
      ->default_str(R"({"type":"nonconvexF"})");
  pplus->add_option("--s", s_list, "comma list of sawtooth parameters");

  auto* hill = app.add_subcommand("hill", "viscous Hbar via the Hill discriminant");
  hill->add_option("--potential", potential, "potential descriptor (JSON)");
  add_pgrid(hill);
  hill->add_option("--d", d, "diffusion (default 1)");
  hill->add_option("--steps", steps, "initial RK4 steps (>= 64)");
  hill->add_option("--lambda-min", lambda_min, "scan Delta from here instead of solving for Hbar");
  hill->add_option("--lambda-max", lambda_max, "end of the Delta scan");
  hill->add_option("--lambda-points", lambda_points, "points in the Delta scan");

  auto* asy = app.add_subcommand("asympt", "expansion coefficients a1, a2");
  asy->add_option("--potential", potential, "fourier potential descriptor (JSON)")->required();
  asy->add_option("--Q-preset", Q_preset, "golden | sqrt-primes");
  asy->add_option("--K", K, "Diophantine check range");
  asy->add_flag("--viscous", viscous, "viscous normalization");
  asy->add_option("--lambda-grid", lambda_grid, "comma list; also recover the mean from the exact 1D curve");

  auto* cdfc = app.add_subcommand("cdf", "distribution function of V");
  add_potential(cdfc);
  cdfc->add_option("--compare", potential2, "second potential; prints the sup-norm distance");
  cdfc->add_option("--resolution", resolution, "sampling resolution for spectral potentials");

  auto* cell = app.add_subcommand("cellpde", "numeric Hbar by large-time marching");
  add_potential(cell);
  add_ham(cell);
  add_pgrid(cell);
  cell->add_option("--N", N, "grid nodes");
  cell->add_option("--T", T, "time horizon");
  cell->add_option("--d", d, "diffusion");
  cell->add_option("--flux", flux, "godunov | lax-friedrichs | local-lax-friedrichs");

  auto* ver = app.add_subcommand("verify", "run a registered experiment or all of them");
  std::string which;
  ver->add_option("experiment", which, "experiment name or 'all'")->required();
  ver->add_option("--s", s_list, "comma list of sawtooth parameters");
  ver->add_option("--N", N, "grid nodes for numeric experiments");
  ver->add_option("--T", T, "time horizon for numeric experiments");
  ver->add_option("--K", K, "Diophantine check range");
  ver->add_option("--Q-preset", Q_preset, "golden | sqrt-primes");
  ver->add_option("--steps", steps, "initial RK4 steps");
  ver->add_option("--lambda-grid", lambda_grid, "comma list");
  ver->add_option("--p-grid", p_grid, "start:stop:step or comma list");
  ver->add_option("--out", out, "output directory (EFFHAM_OUT overrides)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eff) {
      const auto spec = parse_hamiltonian(hamiltonian);
      const auto* h = std::get_if<QuasiConvexProfile>(&spec);
      if (!h) throw UsageError("effective1d needs a quasi-convex Hamiltonian; use cellpde for nonconvexF");
      const Potential v = parse_potential(potential);
      const auto ps = parse_grid(p_grid);
      auto curve = effective_curve_quasiconvex(*h, v, ps);
      CsvTable t{{"p", "hbar", "method", "err", "lower", "upper"}, {}};
      for (const auto& s : curve.samples)
        t.add_row({format_number(s.p), format_number(s.hbar), "exact-quadrature", format_number(s.err),
                   format_number((*h)(s.p) + v.min()), format_number((*h)(s.p) + v.max())});
      print_csv(t);
    } else if (*pplus) {
      const auto spec = parse_hamiltonian(hamiltonian);
      CsvTable t{{"case", "p_minus", "p_plus", "level"}, {}};
      if (const auto* P = std::get_if<NonconvexProfile>(&spec)) {
        if (!s_list.empty()) {
          for (double s : parse_list(s_list))
            t.add_row({"sawtooth s=" + format_number(s), format_number(-pplus_sawtooth(*P, 1.0 - s)),
                       format_number(pplus_sawtooth(*P, s)), "0"});
        } else {
          const Potential v = parse_potential(potential);
          const auto* pl = v.piecewise();
          if (!pl) throw UsageError("pplus for nonconvexF needs a piecewise-linear multiwell potential");
          t.add_row({"multiwell", format_number(pminus_multiwell(*P, *pl)), format_number(pplus_multiwell(*P, *pl)),
                     "0"});
        }
      } else {
        const auto& h = std::get<QuasiConvexProfile>(spec);
        const FlatPiece fp = flat_piece(h, parse_potential(potential));
        t.add_row({"quasi-convex", format_number(fp.p_minus), format_number(fp.p_plus), format_number(fp.level)});
      }
      print_csv(t);
    } else if (*hill) {
      const Potential v = parse_potential(potential);
      if (!std::isnan(lambda_min) || !std::isnan(lambda_max)) {
        if (std::isnan(lambda_min) || std::isnan(lambda_max) || !(lambda_max > lambda_min) || lambda_points < 2)
          throw UsageError("Delta scan needs --lambda-min < --lambda-max and --lambda-points >= 2");
        const auto grid = linspace(lambda_min, lambda_max, lambda_points);
        const auto scan = discriminant_scan(v, grid, steps);
        CsvTable t{{"lambda", "Delta"}, {}};
        for (std::size_t i = 0; i < scan.lambda.size(); ++i)
          t.add_row({format_number(scan.lambda[i]), format_number(scan.delta[i])});
        print_csv(t);
      } else {
        const double dd = d > 0.0 ? d : 1.0;
        const auto curve = viscous_curve(v, parse_grid(p_grid), dd, steps);
        CsvTable t{{"p", "hbar", "lower", "upper"}, {}};
        for (const auto& s : curve.samples)
          t.add_row({format_number(s.p), format_number(s.hbar), format_number(s.p * s.p + v.mean()),
                     format_number(s.p * s.p + v.max())});
        print_csv(t);
      }
    } else if (*asy) {
      const FourierPotential V = parse_fourier(potential);
      const auto Q = make_diophantine(V.dim(), Q_preset, K);
      const auto e = viscous ? viscous_coeffs(V, Q) : inviscid_coeffs(V, Q);
      nlohmann::ordered_json j;
      j["Q"] = Q.Q;
      j["C"] = Q.C;
      j["alpha"] = Q.alpha;
      j["a1"] = e.a1;
      j["a2"] = e.a2;
      j["normalization"] = viscous ? "viscous" : "inviscid";
      if (!lambda_grid.empty()) {
        if (V.dim() != 1) throw UsageError("mean recovery from the exact curve is available in 1D only");
        const auto h = QuasiConvexProfile::quadratic();
        const Potential v = V;
        const auto ls = parse_list(lambda_grid);
        std::vector<double> hb, hv;
        for (double l : ls) {
          hb.push_back(effective_H_quasiconvex(h, v, l));
          hv.push_back(0.5 * l * l);
        }
        const auto mr = recover_mean(ls, hb, hv);
        j["recovered_mean"] = mr.value;
        if (mr.warning) j["warning"] = *mr.warning;
      }
      std::cout << j.dump(2) << "\n";
    } else if (*cdfc) {
      const Potential v = parse_potential(potential);
      const auto F = cdf(v, static_cast<std::size_t>(resolution));
      if (!potential2.empty()) {
        const auto G = cdf(parse_potential(potential2), static_cast<std::size_t>(resolution));
        std::cout << "distance," << format_number(cdf_distance(F, G)) << "\n";
      } else {
        CsvTable t{{"t", "F"}, {}};
        for (const auto& k : F.knots()) t.add_row({format_number(k.t), format_number(k.F)});
        print_csv(t);
      }
    } else if (*cell) {
      const auto H = to_hamiltonian1d(parse_hamiltonian(hamiltonian));
      const Potential v = parse_potential(potential);
      CellOptions opt;
      opt.N = N;
      opt.T = T;
      opt.d = d;
      if (flux == "godunov") opt.flux = NumericalFlux::godunov;
      else if (flux == "lax-friedrichs") opt.flux = NumericalFlux::lax_friedrichs;
      else if (flux == "local-lax-friedrichs") opt.flux = NumericalFlux::local_lax_friedrichs;
      else throw UsageError("unknown flux '" + flux + "'");
      CsvTable t{{"p", "hbar", "err", "drift", "T_used"}, {}};
      for (double p : parse_grid(p_grid)) {
        const auto e = effective_H_numeric(H, v, p, opt);
        t.add_row({format_number(p), format_number(e.value), format_number(e.error), format_number(e.drift),
                   format_number(e.T_used)});
      }
      print_csv(t);
    } else if (*ver) {
      std::vector<std::string> names;
      if (which == "all") {
        for (const auto& e : experiment_registry()) names.push_back(e.name);
      } else {
        if (!find_experiment(which)) {
          std::cerr << "unknown experiment '" << which << "'; registered:";
          for (const auto& e : experiment_registry()) std::cerr << ' ' << e.name;
          std::cerr << "\n";
          return 2;
        }
        names.push_back(which);
      }
      bool all_ok = true;
      for (const auto& name : names) {
        ExperimentConfig cfg;
        cfg.name = name;
        cfg.out_dir = out_dir(out);
        if (ver->count("--N")) cfg.N = N;
        if (ver->count("--T")) cfg.T = T;
        if (ver->count("--K")) cfg.K = K;
        if (ver->count("--Q-preset")) cfg.Q_preset = Q_preset;
        if (ver->count("--steps")) cfg.steps = steps;
        if (!s_list.empty()) cfg.s_values = parse_list(s_list);
        if (!lambda_grid.empty()) cfg.lambda_grid = parse_list(lambda_grid);
        if (ver->count("--p-grid")) cfg.p_grid = parse_grid(p_grid);
        const auto m = run_experiment(cfg);
        std::cout << (m.passed ? "PASS " : "FAIL ") << m.name << "  (" << m.files[2].string() << ")\n";
        all_ok = all_ok && m.passed;
      }
      return all_ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const precondition_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
