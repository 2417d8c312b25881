// qgen: construct, verify and classify Q-generic point sets in finite
// fields and integer grids.

#include <CLI11.hpp>

#include <qgen/io.hpp>
#include <qgen/verify.hpp>

#include <fstream>
#include <iostream>

using namespace qgen;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitUsage = 4;

void print_certificate(std::ostream& os, const Certificate& cert) {
  os << "status: " << to_string(cert.status) << "\n";
  os << "hyperplane subsets tested: " << cert.hyperplane_subsets_tested << "\n";
  os << "quadric subsets tested: " << cert.quadric_subsets_tested << "\n";
  if (cert.max_hyperplane_incidence) {
    os << "max hyperplane incidence: " << *cert.max_hyperplane_incidence << "\n";
  }
  if (cert.max_quadric_incidence) {
    os << "max quadric incidence: " << *cert.max_quadric_incidence << "\n";
  }
  if (!cert.pass()) {
    os << "violating subset (0-based point indices):";
    for (auto i : cert.violating_subset) os << " " << i;
    os << "\n";
    os << "witness determinant: " << cert.witness_determinant << "\n";
  }
}

/// For a quadric violation, also name the quadric through the first d+1
/// points of the subset when they are affinely independent.
void print_violating_quadric(std::ostream& os, const Certificate& cert, const PointSetFile& f) {
  if (cert.status != Certificate::Status::quadric_violation || !f.form) return;
  std::vector<std::vector<std::int64_t>> head;
  for (std::size_t i = 0; i + 1 < cert.violating_subset.size(); ++i) {
    head.push_back(f.points[cert.violating_subset[i]]);
  }
  try {
    auto coeffs = unique_quadric_through(head, *f.form);
    os << "common quadric: Q + f = 0 with f =";
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      os << (i == 0 ? " " : " + ") << coeffs[i].get_str();
      if (i > 0) os << "*X" << i;
    }
    os << "\n";
  } catch (const InvalidInputError&) {
    // head not independent; the subset itself is still the witness
  }
}

void write_output(const PointSetFile& f, const std::string& path, const std::string& format) {
  auto write = [&](std::ostream& os) {
    if (format == "csv") {
      write_csv(os, f);
    } else {
      write_json(os, f);
    }
  };
  if (path.empty()) {
    write(std::cout);
  } else {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InvalidInputError("cannot open output file '" + path + "'");
    write(os);
  }
}

int cmd_construct(int dim, std::uint64_t n, std::uint64_t p, const std::string& form_spec,
                  const std::string& output, const std::string& format, std::uint64_t seed,
                  int threads) {
  VerifyOptions opt;
  opt.threads = threads;
  RationalForm q = parse_form_spec(form_spec, dim);
  std::ostream& report = output.empty() ? std::cerr : std::cout;

  PointSetFile file;
  Certificate cert;
  if (n > 0) {
    GridConstruction g = construct_grid(n, dim, q, seed);
    cert = is_q_generic(grid_point_set(g), g.form, opt);
    file = point_set_file(g, seed, cert);
    report << "grid mode: n=" << n << " p=" << g.p.value() << " dim=" << dim << " points="
           << g.points.size() << "\n";
  } else {
    Prime prime = Prime::checked(p);
    QuadraticForm qp = reduce_mod_p(q, prime);
    Construction c = [&] {
      try {
        return construct_q_generic(qp, dim, seed);
      } catch (const InfeasibleError& e) {
        if (dim == 2 && q == RationalForm::sphere(2) && p % 4 == 3) {
          throw InfeasibleError(std::string(e.what()) +
                                "; the planar sphere admits no rich basis exactly when p == 3 "
                                "(mod 4), and " +
                                std::to_string(p) + " == 3 (mod 4)");
        }
        throw;
      }
    }();
    cert = is_q_generic(field_point_set(c), qp, opt);
    file = point_set_file(c, q, seed, cert);
    report << "field mode: p=" << p << " dim=" << dim << " points=" << c.points.size() << "\n";
  }
  write_output(file, output, format);
  print_certificate(report, cert);
  return cert.pass() ? kExitPass : kExitVerifyFail;
}

int cmd_verify(const std::string& input, const std::string& form_spec, int threads) {
  VerifyOptions opt;
  opt.threads = threads;
  PointSetFile f = read_point_file_from_path(input);
  if (!form_spec.empty()) f.form = parse_form_spec(form_spec, f.dim);
  if (!f.form) {
    throw InvalidInputError("no form in the input file; pass one with --form");
  }

  Certificate cert;
  if (f.mode == "field") {
    Prime p = Prime::checked(f.prime);
    FieldPointSet d{p, f.dim, {}};
    for (const auto& x : f.points) {
      std::vector<std::uint64_t> row(f.dim);
      for (int i = 0; i < f.dim; ++i) {
        if (x[i] < 0 || static_cast<std::uint64_t>(x[i]) >= p.value()) {
          throw InvalidInputError("field-mode coordinate out of [0, p)");
        }
        row[i] = static_cast<std::uint64_t>(x[i]);
      }
      d.points.push_back(std::move(row));
    }
    cert = is_q_generic(d, reduce_mod_p(*f.form, p), opt);
  } else {
    GridPointSet d{f.dim, f.points};
    cert = is_q_generic(d, *f.form, opt);
  }
  print_certificate(std::cout, cert);
  print_violating_quadric(std::cout, cert, f);
  return cert.pass() ? kExitPass : kExitVerifyFail;
}

int cmd_classify(int dim, std::uint64_t p, const std::string& form_spec, std::uint64_t seed) {
  Prime prime = Prime::checked(p);
  RationalForm q = parse_form_spec(form_spec, dim);
  QuadraticForm qp = reduce_mod_p(q, prime);
  std::cout << "form over F_" << p << ": " << form_spec_string(q) << "\n";
  std::cout << "gram rank: " << gram_rank(qp) << "\n";
  FormClass cls = classify(qp, seed);
  if (std::holds_alternative<RichBasis>(cls)) {
    const auto& b = std::get<RichBasis>(cls);
    std::cout << "class: rich\n";
    for (int i = 0; i < b.dim; ++i) {
      std::cout << "  v" << (i + 1) << " = (";
      for (int j = 0; j < b.dim; ++j) {
        std::cout << (j ? ", " : "") << b.vectors[i][j];
      }
      std::cout << ")  Q(v" << (i + 1) << ") = " << qp.evaluate_raw(b.vectors[i]) << "\n";
    }
  } else {
    auto delta = std::get<IrreducibleRank2>(cls).discriminant;
    std::cout << "class: irreducible of rank 2\n";
    std::cout << "  discriminant: " << delta << " (mod " << p << ")\n";
    std::cout << "  legendre(" << delta << ", " << p
              << ") = " << legendre_symbol(static_cast<std::int64_t>(delta), prime)
              << "  (non-square)\n";
  }
  return kExitPass;
}

int cmd_demo(std::uint64_t max_p, int threads) {
  VerifyOptions opt;
  opt.threads = threads;
  std::cout << "sphere form, field constructions of size p+1-d\n";
  std::cout << "   d     p  class        size  certificate\n";
  int failures = 0;
  for (int d = 2; d <= 4; ++d) {
    for (std::uint64_t pv = 5; pv <= max_p; ++pv) {
      if (!is_prime_u64(pv)) continue;
      Prime p = Prime::checked(pv);
      auto q = QuadraticForm::sphere(p, d);
      char line[128];
      if (std::holds_alternative<IrreducibleRank2>(classify(q))) {
        std::snprintf(line, sizeof line, "%4d %5llu  %-12s %5s  %s", d,
                      static_cast<unsigned long long>(pv), "irred-rank2", "-", "excluded");
        std::cout << line << "\n";
        continue;
      }
      auto c = construct_q_generic(q, d);
      auto cert = is_q_generic(field_point_set(c), q, opt);
      if (!cert.pass()) ++failures;
      std::snprintf(line, sizeof line, "%4d %5llu  %-12s %5zu  %s", d,
                    static_cast<unsigned long long>(pv), "rich", c.points.size(),
                    to_string(cert.status));
      std::cout << line << "\n";
    }
  }
  return failures == 0 ? kExitPass : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Q-generic point sets from rational normal curves, with exact certification"};
  app.require_subcommand(1);

  int dim = 2;
  std::uint64_t n = 0, p = 0, seed = 0, max_p = 97;
  std::string form_spec, output, format = "json", input;
  int threads = 0;

  auto* construct = app.add_subcommand("construct", "build a certified point set");
  construct->add_option("--dim", dim, "ambient dimension d >= 2")->required();
  auto* n_opt = construct->add_option("--n", n, "grid bound (grid mode)");
  auto* p_opt = construct->add_option("--p", p, "prime field order (field mode)");
  n_opt->excludes(p_opt);
  construct->add_option("--form", form_spec, "quadratic form: 'sphere' or 'i,j,c;...'")
      ->required();
  construct->add_option("--output,-o", output, "output path (default: stdout)");
  construct->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  construct->add_option("--seed", seed, "seed for randomized searches");
  construct->add_option("--threads", threads, "verification threads (0 = QGEN_THREADS or all cores)");

  auto* verify = app.add_subcommand("verify", "re-certify a point file with exact arithmetic");
  verify->add_option("input", input, "point file (json or csv)")->required();
  verify->add_option("--form", form_spec, "override or supply the form");
  verify->add_option("--threads", threads, "verification threads (0 = QGEN_THREADS or all cores)");

  auto* classify_cmd = app.add_subcommand("classify", "rich / irreducible-rank-2 classification");
  classify_cmd->add_option("--dim", dim, "ambient dimension d >= 2")->required();
  classify_cmd->add_option("--p", p, "prime field order")->required();
  classify_cmd->add_option("--form", form_spec, "quadratic form spec")->required();
  classify_cmd->add_option("--seed", seed, "seed for randomized searches");

  auto* demo = app.add_subcommand("demo", "size table over the (d, p) matrix for the sphere");
  demo->add_option("--max-p", max_p, "largest prime to include");
  demo->add_option("--threads", threads, "verification threads (0 = QGEN_THREADS or all cores)");

  try {
    app.parse(argc, argv);
    if (construct->parsed()) {
      if (n == 0 && p == 0) {
        throw InvalidInputError("construct: one of --n or --p is required");
      }
      return cmd_construct(dim, n, p, form_spec, output, format, seed, threads);
    }
    if (verify->parsed()) return cmd_verify(input, form_spec, threads);
    if (classify_cmd->parsed()) return cmd_classify(dim, p, form_spec, seed);
    if (demo->parsed()) return cmd_demo(max_p, threads);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const PrimeSearchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& r : e.rejected()) {
      std::cerr << "  rejected p=" << r.p << ": " << r.reason << "\n";
    }
    return kExitInfeasible;
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const InvalidInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
