// Command-line interface: domain construction, eigensolves, capacity,
// fatness certificates, lower-bound certificates, verification, sweeps and
// the constants table. Exit codes: 0 success/PASS, 2 FAIL verdict, 1 error.
#include <CLI11.hpp>
#include <functional>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "fracspec/capacity.hpp"
#include "fracspec/constants.hpp"
#include "fracspec/fatness.hpp"
#include "fracspec/pipeline.hpp"
#include "fracspec/raster_io.hpp"
#include "fracspec/report.hpp"
#include "fracspec/spectral.hpp"

namespace fs = std::filesystem;
using namespace fracspec;

namespace {

struct Global {
  std::string config_file;
  std::string out_dir;
  std::string format = "csv";
  bool plot = false;

  constants::TableOptions table_options() const {
    constants::TableOptions opt;
    if (config_file.empty()) return opt;
    std::ifstream is(config_file);
    if (!is) throw Error("cannot open config: " + config_file);
    const auto kv = constants::parse_config(is);
    if (auto it = kv.find("A_dir"); it != kv.end()) opt.a_dir_override = std::stod(it->second);
    if (auto it = kv.find("M_pw"); it != kv.end()) opt.m_pw_override = std::stod(it->second);
    if (auto it = kv.find("phi22"); it != kv.end()) opt.phi22_override = std::stod(it->second);
    return opt;
  }

  void emit(const std::string& name, const std::string& text) const {
    if (out_dir.empty()) {
      std::cout << text;
      return;
    }
    fs::create_directories(out_dir);
    std::ofstream os(fs::path(out_dir) / name);
    os << text;
    std::cout << (fs::path(out_dir) / name).string() << "\n";
  }
};

pipeline::FamilySpec::Kind parse_family(const std::string& name) {
  using Kind = pipeline::FamilySpec::Kind;
  if (name == "square") return Kind::kSquare;
  if (name == "disk") return Kind::kDisk;
  if (name == "annulus") return Kind::kAnnulus;
  if (name == "shell_slug") return Kind::kShellSlug;
  if (name == "comb") return Kind::kCombWindow;
  if (name == "random_perforated") return Kind::kRandomPerforated;
  throw Error("unknown family: " + name);
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracspec: fractional Dirichlet eigenvalues, capacities and certificates"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");
  Global g;
  app.add_option("--config", g.config_file, "key=value configuration file");
  app.add_option("--out", g.out_dir, "output directory (default: stdout)");
  app.add_option("--format", g.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--plot", g.plot, "emit SVG plots alongside tables");

  // domain build / info
  auto* domain = app.add_subcommand("domain", "build or inspect raster domains");
  domain->require_subcommand(1);
  auto* dbuild = domain->add_subcommand("build", "construct a family domain");
  dbuild->set_help_flag("--help", "print help");
  std::string family = "square", out_file = "domain.frgeo";
  pipeline::FamilySpec spec;
  dbuild->add_option("--family", family,
                     "square|disk|annulus|shell_slug|comb|random_perforated");
  dbuild->add_option("--k", spec.k, "topological order (shell_slug, comb)");
  dbuild->add_option("--h", spec.h, "node spacing");
  dbuild->add_option("--side", spec.side, "square side");
  dbuild->add_option("--radius", spec.radius, "disk / annulus outer radius");
  dbuild->add_option("--inner-radius", spec.inner_radius, "annulus inner radius");
  dbuild->add_option("--comb-halfwidth", spec.comb_halfwidth, "comb window half-width");
  dbuild->add_option("--seed", spec.seed, "random seed");
  dbuild->add_option("--holes", spec.hole_count, "perforation count");
  dbuild->add_option("--out-file", out_file, "frgeo destination");

  auto* dinfo = domain->add_subcommand("info", "inradius, order and node counts");
  std::string dom_file;
  dinfo->add_option("--domain", dom_file, "frgeo file")->required();

  // eig
  auto* eig = app.add_subcommand("eig", "smallest fractional Dirichlet eigenvalue");
  std::string eig_dom;
  double eig_s = 0.75, eig_tol = 1e-8;
  eig->add_option("--domain", eig_dom, "frgeo file")->required();
  eig->add_option("--s", eig_s, "fractional order");
  eig->add_option("--tol", eig_tol, "residual tolerance");

  // cap
  auto* cap = app.add_subcommand("cap", "relative fractional capacity");
  std::string cap_dom;
  double cap_s = 0.75;
  std::vector<double> sigma_rect{0.4, 0.4, 0.6, 0.6};
  cap->add_option("--domain", cap_dom, "frgeo file")->required();
  cap->add_option("--s", cap_s, "fractional order");
  cap->add_option("--sigma-rect", sigma_rect, "x0 y0 x1 y1 Dirichlet rectangle")
      ->expected(4);

  // fatness
  auto* fat = app.add_subcommand("fatness", "tile certificate of complement fatness");
  std::string fat_dom;
  std::vector<double> fat_center{0.0, 0.0};
  bool fat_center_set = false;
  fat->add_option("--domain", fat_dom, "frgeo file")->required();
  fat->add_option("--center", fat_center, "tile center (default: domain center)")
      ->expected(2)
      ->each([&](const std::string&) { fat_center_set = true; });

  // bound
  auto* bound = app.add_subcommand("bound", "lower-bound certificate");
  std::string bound_dom;
  double bound_s = 0.75;
  bool bound_qp = false;
  bound->add_option("--domain", bound_dom, "frgeo file")->required();
  bound->add_option("--s", bound_s, "fractional order (> 1/2)");
  bound->add_flag("--qp", bound_qp, "direct capacity solves instead of the projection chain");

  // verify
  auto* verify = app.add_subcommand("verify", "lower <= eig <= upper consistency report");
  std::string verify_dom;
  double verify_s = 0.75;
  verify->add_option("--domain", verify_dom, "frgeo file")->required();
  verify->add_option("--s", verify_s, "fractional order (> 1/2)");

  // sweep k | s | bbm
  auto* sweep = app.add_subcommand("sweep", "parameter sweeps");
  sweep->require_subcommand(1);
  auto* sweep_k = sweep->add_subcommand("k", "k^s lambda across the optimal family");
  sweep_k->set_help_flag("--help", "print help");
  std::string klist = "2,5,10";
  double sweep_k_s = 0.75, sweep_k_h = 0.125;
  sweep_k->add_option("--k-list", klist, "comma-separated orders");
  sweep_k->add_option("--s", sweep_k_s, "fractional order");
  sweep_k->add_option("--h", sweep_k_h, "node spacing");

  auto* sweep_s = sweep->add_subcommand("s", "near-1/2 sweep on the punctured comb");
  sweep_s->set_help_flag("--help", "print help");
  std::string slist = "0.55,0.6,0.65";
  int sweep_s_k = 4;
  double sweep_s_h = 0.5;
  bool no_eig = false;
  sweep_s->add_option("--s-list", slist, "comma-separated orders in (1/2, 3/4)");
  sweep_s->add_option("--k", sweep_s_k, "comb order");
  sweep_s->add_option("--h", sweep_s_h, "node spacing");
  sweep_s->add_flag("--no-eigensolves", no_eig, "trial bounds only");

  auto* sweep_bbm = sweep->add_subcommand("bbm", "(1-s) lambda near s = 1");
  std::string bbm_dom, bbm_list = "0.9,0.95";
  sweep_bbm->add_option("--domain", bbm_dom, "frgeo file")->required();
  sweep_bbm->add_option("--s-list", bbm_list, "comma-separated orders");

  // constants
  auto* consts = app.add_subcommand("constants", "constants table (constants.csv)");
  std::string const_list = "0.55,0.6,0.65,0.7,0.75,0.8,0.85,0.9,0.95";
  consts->add_option("--s-list", const_list, "comma-separated orders");

  // allow the global flags after subcommand names
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    for (CLI::App* sub : a->get_subcommands({})) {
      sub->fallthrough(true);
      enable_fallthrough(sub);
    }
  };
  enable_fallthrough(&app);

  CLI11_PARSE(app, argc, argv);

  try {
    if (dbuild->parsed()) {
      spec.kind = parse_family(family);
      const auto dom = pipeline::build_family(spec);
      geometry::save_frgeo(out_file, dom);
      std::cout << out_file << ": " << dom.nx << "x" << dom.ny << " nodes, "
                << dom.count_inside() << " inside, " << dom.punctures.size()
                << " punctures\n";
      return 0;
    }
    if (dinfo->parsed()) {
      const auto dom = geometry::load_frgeo(dom_file);
      const double r = geometry::inradius(dom);
      const auto topo = geometry::topology_order(dom);
      if (g.format == "json") {
        std::ostringstream os;
        os.precision(15);
        os << "{\"label\": \"" << dom.label << "\", \"nx\": " << dom.nx
           << ", \"ny\": " << dom.ny << ", \"h\": " << dom.h
           << ", \"inside\": " << dom.count_inside() << ", \"inradius\": " << r
           << ", \"order\": " << topo.k
           << ", \"bounded_components\": " << topo.bounded_components.size()
           << ", \"punctures\": " << dom.punctures.size() << "}\n";
        g.emit("domain_info.json", os.str());
      } else {
        report::Csv csv({"label", "nx", "ny", "h", "inside", "inradius", "order",
                         "bounded_components", "punctures"});
        csv.add_row({dom.label, std::to_string(dom.nx), std::to_string(dom.ny),
                     report::fmt(dom.h), std::to_string(dom.count_inside()),
                     report::fmt(r), std::to_string(topo.k),
                     std::to_string(topo.bounded_components.size()),
                     std::to_string(dom.punctures.size())});
        std::ostringstream os;
        csv.write(os);
        g.emit("domain_info.csv", os.str());
      }
      return 0;
    }
    if (eig->parsed()) {
      const auto dom = geometry::load_frgeo(eig_dom);
      const gagliardo::FractionalOrder order(eig_s);
      const auto form = gagliardo::assemble_2d(dom, order);
      spectral::EigOptions opt;
      opt.tol = eig_tol;
      const auto res = spectral::smallest_eigenvalue(form, opt);
      if (g.format == "json") {
        std::ostringstream os;
        os.precision(15);
        os << "{\"s\": " << eig_s << ", \"lambda\": " << res.lambda
           << ", \"iterations\": " << res.iterations << ", \"residual\": " << res.residual
           << "}\n";
        g.emit("eig.json", os.str());
      } else {
        report::Csv csv({"s", "lambda", "iterations", "residual"});
        csv.add_row({report::fmt(eig_s), report::fmt(res.lambda),
                     std::to_string(res.iterations), report::fmt(res.residual)});
        std::ostringstream os;
        csv.write(os);
        g.emit("eig.csv", os.str());
      }
      return 0;
    }
    if (cap->parsed()) {
      const auto dom = geometry::load_frgeo(cap_dom);
      const gagliardo::FractionalOrder order(cap_s);
      const auto form = gagliardo::assemble_2d(dom, order);
      std::vector<int> omega, sigma;
      for (int j = 0; j < dom.ny; ++j)
        for (int i = 0; i < dom.nx; ++i) {
          if (!dom.mask[dom.index(i, j)]) continue;
          omega.push_back(static_cast<int>(dom.index(i, j)));
          const Point p = dom.node(i, j);
          if (p.x >= sigma_rect[0] && p.y >= sigma_rect[1] && p.x <= sigma_rect[2] &&
              p.y <= sigma_rect[3])
            sigma.push_back(static_cast<int>(dom.index(i, j)));
        }
      const auto res = capacity::capacity(sigma, omega, form);
      std::ostringstream os;
      os.precision(15);
      os << "{\"s\": " << cap_s << ", \"value\": " << res.value
         << ", \"kkt_residual\": " << res.kkt_residual
         << ", \"active_set\": " << res.active_set.size()
         << ", \"iterations\": " << res.iterations << "}\n";
      g.emit("cap.json", os.str());
      return 0;
    }
    if (fat->parsed()) {
      const auto dom = geometry::load_frgeo(fat_dom);
      Point center{dom.origin.x + 0.5 * (dom.nx - 1) * dom.h,
                   dom.origin.y + 0.5 * (dom.ny - 1) * dom.h};
      if (fat_center_set) center = {fat_center[0], fat_center[1]};
      const auto cert = fatness::fatness_certificate(dom, center);
      g.emit("fatness.json", fatness::to_json(cert));
      if (g.plot) g.emit("fatness.svg", fatness::to_svg(cert, dom));
      const bool ok = cert.max_projection() >= cert.bound - 2.0 * dom.h;
      return ok ? 0 : 2;
    }
    if (bound->parsed() || verify->parsed()) {
      const std::string file = bound->parsed() ? bound_dom : verify_dom;
      const double s = bound->parsed() ? bound_s : verify_s;
      const auto dom = geometry::load_frgeo(file);
      const auto table = constants::build_table(g.table_options());
      if (bound->parsed()) {
        pipeline::CertificateOptions copt;
        copt.capacity_via_qp = bound_qp;
        const auto cert = pipeline::lower_bound_certificate(dom, s, table, copt);
        g.emit("bound.json", pipeline::to_json(cert));
        return 0;
      }
      const auto rep = pipeline::verify_main_theorem(dom, s, table);
      g.emit("verify.json", pipeline::to_json(rep));
      std::cout << (rep.pass ? "PASS" : "FAIL") << " lower=" << std::max(
                       rep.certificate.bound_pipeline, rep.certificate.bound_closed_form)
                << " eig=" << rep.eig << " upper=" << rep.upper
                << (rep.heuristic ? "  [heuristic constants]" : "") << "\n";
      return rep.pass ? 0 : 2;
    }
    if (sweep_k->parsed()) {
      std::vector<int> ks;
      for (double v : parse_list(klist)) ks.push_back(static_cast<int>(v));
      const auto res = spectral::k_sweep(ks, sweep_k_s, sweep_k_h);
      report::Csv csv({"k", "lambda", "lambda_shell", "k_pow_s_lambda"});
      std::vector<std::pair<double, double>> pts;
      for (const auto& row : res.rows) {
        csv.add_row({std::to_string(row.k), report::fmt(row.lambda),
                     report::fmt(row.lambda_shell), report::fmt(row.scaled)});
        pts.push_back({static_cast<double>(row.k), row.scaled});
      }
      std::ostringstream os;
      csv.write(os);
      os << "# max_over_min," << report::fmt(res.max_over_min) << "\n";
      g.emit("sweep_k.csv", os.str());
      if (g.plot) g.emit("sweep_k.svg", report::plot_xy(pts, "k", "k^s lambda", "k sweep"));
      return 0;
    }
    if (sweep_s->parsed()) {
      const auto res = pipeline::s_half_sweep(sweep_s_k, parse_list(slist), sweep_s_h, !no_eig);
      report::Csv csv({"s", "eps", "n", "upper", "lambda_window", "upper_over_2s_minus_1"});
      std::vector<std::pair<double, double>> pts;
      for (const auto& row : res.rows) {
        csv.add_row({report::fmt(row.s), report::fmt(row.eps), std::to_string(row.n),
                     report::fmt(row.upper), report::fmt(row.lambda_window),
                     report::fmt(row.ratio)});
        pts.push_back({row.s, row.ratio});
      }
      std::ostringstream os;
      csv.write(os);
      os << "# max_over_min," << report::fmt(res.max_over_min_ratio) << "\n";
      g.emit("sweep_s.csv", os.str());
      if (g.plot)
        g.emit("sweep_s.svg", report::plot_xy(pts, "s", "upper/(2s-1)", "near-1/2 sweep"));
      return 0;
    }
    if (sweep_bbm->parsed()) {
      const auto dom = geometry::load_frgeo(bbm_dom);
      const auto rows = spectral::bbm_sweep(dom, parse_list(bbm_list));
      report::Csv csv({"s", "lambda", "one_minus_s_lambda"});
      std::vector<std::pair<double, double>> pts;
      for (const auto& row : rows) {
        csv.add_row({report::fmt(row.x), report::fmt(row.lambda), report::fmt(row.statistic)});
        pts.push_back({row.x, row.statistic});
      }
      std::ostringstream os;
      csv.write(os);
      g.emit("sweep_bbm.csv", os.str());
      if (g.plot)
        g.emit("sweep_bbm.svg", report::plot_xy(pts, "s", "(1-s) lambda", "bbm sweep"));
      return 0;
    }
    if (consts->parsed()) {
      auto opt = g.table_options();
      opt.s_values = parse_list(const_list);
      const auto table = constants::build_table(opt);
      std::ostringstream os;
      constants::write_constants_csv(os, table);
      g.emit("constants.csv", os.str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
