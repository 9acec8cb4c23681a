// zeq: descend polynomial systems with computable-number coefficients to
// Zariski-equisingular systems over algebraic numbers, and verify the result.
//
// exit codes: 0 pass, 1 usage, 2 computation failure, 3 verification fail,
// 4 inconclusive verification.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "zeq/gendisc.hpp"
#include "zeq/problem_io.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) zeq::fail(zeq::errc::validation_error, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) zeq::fail(zeq::errc::validation_error, "cannot write file: " + path);
  out << text;
}

void apply_overrides(zeq::DescentProblem& prob, const std::string& eps, unsigned precision_cap,
                     int grid_cap, const std::string& order, bool homogeneous) {
  if (!eps.empty()) prob.epsilon = zeq::Rat::from_string(eps);
  if (precision_cap != 0) prob.limits.prec_cap = precision_cap;
  if (grid_cap != 0) prob.limits.grid_cap = grid_cap;
  if (!order.empty()) {
    if (order != "grlex" && order != "lex")
      zeq::fail(zeq::errc::validation_error, "--order must be grlex or lex");
    prob.order = order == "grlex" ? zeq::MonomialOrder::grlex : zeq::MonomialOrder::lex;
  }
  if (homogeneous) prob.homogeneous = true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zariski-equisingular descent to algebraic coefficients"};
  app.require_subcommand(1);

  std::string problem_path, output_path, out_file, report_file, eps_override, order_override;
  std::string gendisc_poly, gendisc_var = "x", track_point;
  unsigned precision_cap = 0;
  int grid_cap = 0;
  bool homogeneous = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--epsilon", eps_override, "override the problem epsilon (rational a/b)");
    cmd->add_option("--precision-cap", precision_cap, "refinement precision cap (bits)");
    cmd->add_option("--grid-cap", grid_cap, "finest dyadic mesh exponent of the q search");
    cmd->add_option("--order", order_override, "monomial order: grlex or lex");
    cmd->add_flag("--homogeneous", homogeneous, "treat the inputs as homogeneous");
  };

  CLI::App* descend_cmd = app.add_subcommand("descend", "run the full descent");
  descend_cmd->add_option("problem", problem_path, "problem file (JSON)")->required();
  descend_cmd->add_option("-o,--output", out_file, "output file (default: <problem>.out.json)");
  add_common(descend_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "verify a descent output");
  verify_cmd->add_option("problem", problem_path, "problem file")->required();
  verify_cmd->add_option("output", output_path, "output file to verify")->required();
  verify_cmd->add_option("-o,--report", report_file, "report file (default: stdout)");
  add_common(verify_cmd);

  CLI::App* cascade_cmd = app.add_subcommand("cascade", "emit the equisingularity certificate");
  cascade_cmd->add_option("problem", problem_path, "problem file")->required();
  cascade_cmd->add_option("-o,--output", out_file, "certificate file (default: stdout)");
  add_common(cascade_cmd);

  CLI::App* gendisc_cmd = app.add_subcommand("gendisc", "print the generalized discriminants");
  gendisc_cmd->add_option("poly", gendisc_poly, "monic univariate polynomial over Q")->required();
  gendisc_cmd->add_option("--var", gendisc_var, "variable name (default x)");

  CLI::App* track_cmd = app.add_subcommand("track", "track the selected root to a rational point");
  track_cmd->add_option("problem", problem_path, "problem file")->required();
  track_cmd->add_option("--q", track_point, "target point, comma-separated rationals")->required();
  add_common(track_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*descend_cmd) {
      zeq::DescentProblem prob = zeq::parse_problem(read_file(problem_path));
      apply_overrides(prob, eps_override, precision_cap, grid_cap, order_override, homogeneous);
      zeq::DescentOutput out = zeq::descend(prob);
      std::string path = out_file.empty() ? problem_path + ".out.json" : out_file;
      write_file(path, zeq::serialize_output(out));
      std::cout << "descend: wrote " << path << " (q =";
      for (const auto& x : out.q) std::cout << " " << x.str();
      std::cout << ", achieved eps = " << out.achieved_eps.str() << ")\n";
      return 0;
    }
    if (*verify_cmd) {
      zeq::DescentProblem prob = zeq::parse_problem(read_file(problem_path));
      apply_overrides(prob, eps_override, precision_cap, grid_cap, order_override, homogeneous);
      zeq::DescentOutput out = zeq::parse_output(read_file(output_path), prob);
      zeq::VerificationReport rep = zeq::verify_output(prob, out);
      std::string text = zeq::serialize_report(rep);
      if (report_file.empty())
        std::cout << text;
      else
        write_file(report_file, text);
      if (rep.any_fail()) return 3;
      if (rep.any_inconclusive()) return 4;
      return 0;
    }
    if (*cascade_cmd) {
      zeq::DescentProblem prob = zeq::parse_problem(read_file(problem_path));
      apply_overrides(prob, eps_override, precision_cap, grid_cap, order_override, homogeneous);
      zeq::TowerElem one = zeq::TowerElem::one(prob.F);
      zeq::Cascade<zeq::TowerElem> cert = zeq::build_cascade(prob.inputs, one, prob.homogeneous);
      std::string text = zeq::serialize_certificate(cert);
      if (out_file.empty())
        std::cout << text;
      else
        write_file(out_file, text);
      return 0;
    }
    if (*gendisc_cmd) {
      zeq::Upoly<zeq::Rat> f = zeq::parse_q_upoly(gendisc_poly, gendisc_var);
      zeq::DiscSeq<zeq::Rat> seq = zeq::generalized_discriminants_q(f);
      std::cout << "delta = (";
      for (size_t k = 0; k < seq.values.size(); ++k) {
        if (k) std::cout << ", ";
        std::cout << seq.values[k].str();
      }
      std::cout << ")\n";
      std::cout << "l = " << seq.first_nonzero << "\n";
      std::cout << "distinct_roots = " << (seq.values.size() - seq.first_nonzero + 1) << "\n";
      return 0;
    }
    if (*track_cmd) {
      zeq::DescentProblem prob = zeq::parse_problem(read_file(problem_path));
      apply_overrides(prob, eps_override, precision_cap, grid_cap, order_override, homogeneous);
      std::vector<zeq::GaussRat> q = zeq::parse_point(track_point);
      zeq::TrackOutcome t = zeq::track_root(*prob.F, q, prob.limits);
      std::cout << "root_index = " << t.root_index << "\n";
      std::cout << "box = " << t.box.str() << "\n";
      if (t.roots_at_q.separation)
        std::cout << "delta = " << t.roots_at_q.separation->str() << "\n";
      std::cout << "steps = " << t.steps << "\n";
      return 0;
    }
  } catch (const zeq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
