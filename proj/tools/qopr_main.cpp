// Copyright 2026 the qopr developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qopr/channels.hpp"
#include "qopr/classical.hpp"
#include "qopr/divisibility.hpp"
#include "qopr/errors.hpp"
#include "qopr/linalg.hpp"
#include "qopr/matrix_io.hpp"
#include "qopr/representation.hpp"
#include "qopr/verification.hpp"

namespace {

using namespace qopr;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSoftFailure = 3;  // failed assertions / indeterminate rows

std::vector<double> parse_grid(const std::string& text) {
  const auto first = text.find(':');
  if (first == std::string::npos) {
    return {std::stod(text)};
  }
  const auto second = text.find(':', first + 1);
  if (second == std::string::npos) {
    throw ArgumentError("grid '" + text + "': expected start:stop:step");
  }
  const double start = std::stod(text.substr(0, first));
  const double stop = std::stod(text.substr(first + 1, second - first - 1));
  const double step = std::stod(text.substr(second + 1));
  if (!(step > 0.0)) throw ArgumentError("grid '" + text + "': step must be positive");
  std::vector<double> grid;
  // inclusive of both endpoints within half a step
  for (double t = start; t <= stop + step / 2.0; t += step) grid.push_back(t);
  if (grid.empty()) throw ArgumentError("grid '" + text + "' is empty");
  return grid;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(std::stod(item));
  }
  if (values.empty()) throw ArgumentError("list '" + text + "' is empty");
  return values;
}

struct FamilyParams {
  double gamma = 1.0;
  int set = 1;
  double epsilon = 0.3;
  std::vector<double> q = {0.5, 0.5};
};

TimeFamily make_family(const std::string& id, const FamilyParams& p) {
  if (id == "dichotomic") return dichotomic_family(p.gamma);
  if (id == "oscillatory") return oscillatory_family();
  if (id == "counterexample3") return counterexample3_family(counterexample3_set(p.set), p.gamma);
  if (id == "appendix-b") return appendix_b_family(p.epsilon, ProbabilityVector(p.q));
  throw ArgumentError("unknown family '" + id +
                      "' (known: dichotomic, oscillatory, counterexample3, appendix-b)");
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw ArgumentError("cannot write file: " + out_path);
  out << text;
}

std::string render_matrix(const ComplexMatrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "  ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Complex e = m(i, j);
      os << format_real(e.real());
      if (e.imag() != 0.0) os << (e.imag() > 0 ? "+" : "") << format_real(e.imag()) << "i";
      if (j + 1 < m.cols()) os << "  ";
    }
    os << "\n";
  }
  return os.str();
}

int cmd_embed(const std::string& input, const std::string& out_dir) {
  const ComplexMatrix raw = load_matrix(input);
  StochasticMatrix lambda = StochasticMatrix(raw);  // DomainError names the violated invariant

  const RepresentationKraus rep = build_representation(lambda);
  const KrausSet repaired = repair_dependence(rep);
  const ChannelMatrixForm form = matrix_form(rep.kraus);
  const auto blocks = v_blocks(lambda);
  const auto alpha = alpha_partition(lambda.dim());
  const DirectSumBlocks extracted = direct_sum_extract(form.matrix(), alpha, 1e-12);

  const std::filesystem::path dir(out_dir.empty() ? "." : out_dir);
  std::filesystem::create_directories(dir);
  save_kraus(repaired.ops(), dir / "kraus.json");
  save_matrix(form.matrix(), dir / "matrix_form.json");
  save_kraus(blocks, dir / "vblocks.json");

  std::ostringstream os;
  os << "# embed report\n";
  os << "## block: input stochastic matrix (" << lambda.dim() << "x" << lambda.dim() << ")\n";
  os << render_matrix(lambda.to_complex());
  os << "## block: operator set after dependence repair (" << repaired.size() << " of "
     << rep.kraus.size() << " kept) -> kraus.json\n";
  const CptpCheck cptp = is_cptp(repaired);
  os << "identity condition max violation: " << format_real(cptp.max_violation) << "\n";
  os << "## block: matrix form -> matrix_form.json\n";
  os << "direct-sum structure clean: " << (extracted.clean ? "yes" : "no")
     << " (max off-block entry " << format_real(extracted.max_off_block) << ")\n";
  os << "## block: principal submatrices -> vblocks.json\n";
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    os << "V" << j << (j == 0 ? " (equals the input)" : "") << ":\n"
       << render_matrix(blocks[j]);
  }
  std::cout << os.str();
  return kExitOk;
}

int cmd_analyze(const std::string& family_id, const FamilyParams& params,
                const std::string& t_spec, const std::string& offset_spec,
                const std::string& out_path) {
  const TimeFamily fam = make_family(family_id, params);
  const std::vector<double> grid = parse_grid(t_spec);
  const std::vector<double> offsets = parse_list(offset_spec);
  const auto reports = scan(fam, grid, offsets);
  write_output(out_path, scan_table(reports));
  const bool any_indeterminate =
      std::any_of(reports.begin(), reports.end(),
                  [](const DivisibilityReport& r) { return r.indeterminate; });
  return any_indeterminate ? kExitSoftFailure : kExitOk;
}

int cmd_verify(const std::string& suite, const SuiteOptions& opts) {
  const auto checks = run_suite(suite, opts);
  bool all = true;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " - " << c.detail << "\n";
    all = all && c.passed;
  }
  std::cout << (all ? "all checks passed" : "some checks FAILED") << " (" << checks.size()
            << " checks)\n";
  return all ? kExitOk : kExitSoftFailure;
}

int cmd_demo_dichotomic(double gamma, double t, const std::string& out_path) {
  const TimeFamily fam = dichotomic_family(gamma);
  const double s = t / 2.0;
  std::ostringstream os;
  os << "# demo: two-state jump process (gamma=" << format_real(gamma)
     << ", t=" << format_real(t) << ")\n";
  os << "## block: stochastic matrix at t\n" << render_matrix(fam(t).to_complex());
  const RepresentationKraus rep = build_representation(fam(t));
  os << "## block: operator pair\n";
  for (std::size_t i = 0; i < rep.kraus.size(); ++i)
    os << "A" << i << ":\n" << render_matrix(rep.kraus[i]);
  const ChannelMatrixForm form = matrix_form(rep.kraus);
  os << "## block: matrix form (two copies of the stochastic matrix on its blocks)\n"
     << render_matrix(form.matrix());
  const auto extracted = direct_sum_extract(form.matrix(), alpha_partition(2), 1e-12);
  os << "block residual vs input: "
     << format_real(max_abs_diff(extracted.blocks[0], fam(t).to_complex())) << " and "
     << format_real(max_abs_diff(extracted.blocks[1], fam(t).to_complex())) << "\n";
  os << "## block: divisibility verdict at (t, s=t/2)\n";
  const DivisibilityReport verdict = assess(fam, t, s);
  os << "p_divisible: " << (verdict.p_divisible ? "true" : "false")
     << ", cp_divisible: " << (verdict.cp_divisible ? "true" : "false")
     << ", min reordered eigenvalue: " << format_real(verdict.min_choi_eigenvalue)
     << ", min intermediate entry: " << format_real(verdict.min_intermediate_entry) << "\n";
  write_output(out_path, os.str());
  return kExitOk;
}

int cmd_demo_appendix_b(double epsilon, const std::vector<double>& q, double tol,
                        const std::string& out_path) {
  const ProbabilityVector qv(q);
  const JointProb3 joint = appendix_b_joint(epsilon, qv);
  const AppendixBReport rep = appendix_b_analysis(joint, tol);
  std::ostringstream os;
  os << "# demo: two-state memory process (epsilon=" << format_real(epsilon) << ", q=("
     << format_real(q[0]) << ", " << format_real(q[1]) << "))\n";
  os << "## block: order-three joint table (j3, j2, j1) -> probability\n";
  for (int j3 = 0; j3 < 2; ++j3)
    for (int j2 = 0; j2 < 2; ++j2)
      for (int j1 = 0; j1 < 2; ++j1)
        os << "  p(" << j3 << "," << j2 << "," << j1
           << ") = " << format_real(joint.table[j3][j2][j1]) << "\n";
  os << "table sum: " << format_real(joint.sum()) << "\n";
  os << "## block: transition matrices\n";
  os << "T(t2,t1):\n" << render_matrix(rep.t21);
  os << "T(t3,t2):\n" << render_matrix(rep.t32);
  os << "T(t3,t1):\n" << render_matrix(rep.t31);
  os << "## block: composition law\n";
  os << "T(t3,t1) = T(t3,t2) T(t2,t1): " << (rep.ck_holds ? "holds" : "FAILS")
     << " (defect " << format_real(rep.ck_error) << ")\n";
  os << "## block: order-three Markov condition\n";
  os << "p(j3 | j2, j1) = p(j3 | j2): " << (rep.markov_holds ? "holds" : "fails")
     << " (max gap " << format_real(rep.markov_error) << ")\n";
  os << "p(1 | j2=1, j1=0) = " << format_real(rep.cond3_given_21[1][1][0])
     << ", p(1 | j2=1, j1=1) = " << format_real(rep.cond3_given_21[1][1][1]) << "\n";
  write_output(out_path, os.str());
  return kExitOk;
}

int cmd_demo_counterexample3(int set, double gamma, const std::string& spec_text,
                             const std::string& out_path) {
  const TimeFamily fam = counterexample3_family(counterexample3_set(set), gamma);
  const ClassSpec spec = spec_text.empty()
                             ? ClassSpec{OperationClass::minus, 1, 1, set == 1 ? 4 : 5}
                             : ClassSpec::parse(spec_text);
  spec.validate(3);
  std::vector<double> grid;
  for (double t = 0.0; t <= 6.0 + 1e-9; t += 0.05) grid.push_back(t);
  const InvertibilityReport report = invertibility_scan(spec, fam, grid);
  std::ostringstream os;
  os << "# demo: three-state uniqueness witness (set " << set << ", gamma="
     << format_real(gamma) << ", member " << spec.to_string() << ")\n";
  os << "## block: determinant of the member's matrix form vs t\n";
  for (std::size_t i = 0; i < report.points.size(); i += 5) {
    os << "  t=" << format_real(report.points[i].t)
       << "  det=" << format_real(report.points[i].det.real()) << "\n";
  }
  os << "## block: located determinant roots\n";
  if (report.roots.empty()) os << "  none on the scanned range\n";
  for (const auto& root : report.roots) {
    os << "  root at t=" << format_real(root.refined) << " (bracket ["
       << format_real(root.lo) << ", " << format_real(root.hi) << "], |det|="
       << format_real(root.det_at_refined) << ", "
       << (root.kind == RootBracket::Kind::sign_change ? "sign change" : "magnitude dip")
       << ")\n";
  }
  os << "## block: classical family stays invertible\n";
  double min_det = 1.0;
  for (double t = 0.0; t <= 10.0; t += 0.25)
    min_det = std::min(min_det, std::abs(det_and_inverse(fam(t).to_complex()).det));
  os << "min |det| of the stochastic matrix on [0,10]: " << format_real(min_det) << "\n";
  write_output(out_path, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qopr - embed column-stochastic matrices into quantum operations and certify "
      "classical/completely-positive divisibility"};
  app.require_subcommand(1);

  // embed
  auto* embed = app.add_subcommand("embed", "build the operator set of a stochastic matrix");
  std::string embed_input;
  std::string embed_out = ".";
  embed->add_option("input", embed_input, "stochastic matrix file (shared text format)")
      ->required();
  embed->add_option("--out", embed_out, "output directory for kraus/matrix_form/vblocks files");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "divisibility scan over a named family");
  std::string an_family, an_t, an_offset = "0.5", an_out;
  FamilyParams an_params;
  analyze->add_option("--family", an_family, "dichotomic | oscillatory | counterexample3 | appendix-b")
      ->required();
  analyze->add_option("--gamma", an_params.gamma, "rate parameter");
  analyze->add_option("--set", an_params.set, "counterexample3 parameter set (1 or 2)");
  analyze->add_option("--epsilon", an_params.epsilon, "memory parameter (appendix-b)");
  std::string an_q;
  analyze->add_option("--q", an_q, "initial probabilities, comma separated (appendix-b)");
  analyze->add_option("--t", an_t, "base-time grid start:stop:step")->required();
  analyze->add_option("--offset", an_offset, "comma-separated offsets added to each base time");
  analyze->add_option("--out", an_out, "output file (default: stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  std::string suite;
  SuiteOptions vopts;
  std::string verify_q;
  verify->add_option("suite", suite, "thm1 | thm2 | thm3 | thm4 | lemma3 | appendix-b | all")
      ->required();
  verify->add_option("--dim", vopts.dim, "restrict dimension loops to one N");
  verify->add_option("--seed", vopts.seed, "random seed (default 42)");
  verify->add_option("--epsilon", vopts.epsilon, "memory parameter override (appendix-b)");
  verify->add_option("--q", verify_q, "initial probabilities override (appendix-b)");

  // demo
  auto* demo = app.add_subcommand("demo", "reproduce a named worked example end to end");
  std::string demo_name, demo_out, demo_q = "0.5,0.5";
  double demo_gamma = 1.0, demo_t = 1.0, demo_eps = 0.3, demo_tol = 1e-12;
  int demo_set = 1;
  demo->add_option("name", demo_name, "dichotomic | appendix-b | counterexample3")->required();
  demo->add_option("--gamma", demo_gamma, "rate parameter");
  demo->add_option("--t", demo_t, "evaluation time");
  demo->add_option("--epsilon", demo_eps, "memory parameter");
  demo->add_option("--q", demo_q, "initial probabilities, comma separated");
  demo->add_option("--set", demo_set, "counterexample3 parameter set (1 or 2)");
  std::string demo_spec;
  demo->add_option("--spec", demo_spec,
                   "operation member to scan, e.g. \"class:2 r:1 v:1 M:4\" (counterexample3)");
  demo->add_option("--tol", demo_tol, "tolerance for the report verdicts");
  demo->add_option("--out", demo_out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse diagnostic
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (embed->parsed()) return cmd_embed(embed_input, embed_out);
    if (analyze->parsed()) {
      if (!an_q.empty()) an_params.q = parse_list(an_q);
      return cmd_analyze(an_family, an_params, an_t, an_offset, an_out);
    }
    if (verify->parsed()) {
      if (!verify_q.empty()) vopts.q = parse_list(verify_q);
      return cmd_verify(suite, vopts);
    }
    if (demo->parsed()) {
      if (demo_name == "dichotomic") return cmd_demo_dichotomic(demo_gamma, demo_t, demo_out);
      if (demo_name == "appendix-b")
        return cmd_demo_appendix_b(demo_eps, parse_list(demo_q), demo_tol, demo_out);
      if (demo_name == "counterexample3")
        return cmd_demo_counterexample3(demo_set, demo_gamma, demo_spec, demo_out);
      throw ArgumentError("unknown demo '" + demo_name +
                          "' (known: dichotomic, appendix-b, counterexample3)");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
