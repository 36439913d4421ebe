#include "locind/cli.hpp"

#include "locind/abelian.hpp"
#include "locind/cover.hpp"
#include "locind/decide.hpp"
#include "locind/fuzz.hpp"
#include "locind/graphs.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace locind {

  namespace {

    // Input problem reported with exit code 1.
    struct InputError : std::runtime_error {
      using std::runtime_error::runtime_error;
    };

    std::string read_file(std::string const& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        throw InputError(path + ": cannot read file");
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }

    void write_text(std::string const& path, std::string const& text) {
      std::ofstream out(path, std::ios::binary);
      if (!out) {
        throw InputError(path + ": cannot write file");
      }
      out << text;
    }

    struct SearchFlags {
      std::size_t phi_bound   = 5;
      std::size_t concat_cap  = 24;
      std::size_t cycle_limit = 10'000;
      std::size_t genho_m_cap = 64;
      bool        minima_only = false;
      bool        all_methods = false;

      void attach(CLI::App* cmd) {
        cmd->add_option("--phi-bound", phi_bound, "coefficient bound for weighting enumeration")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--concat-cap", concat_cap, "most relators in a concatenation search")
            ->check(CLI::Range(1, 24));
        cmd->add_option("--cycle-limit", cycle_limit, "most simple cycles enumerated")->check(CLI::PositiveNumber);
        cmd->add_option("--genho-m-cap", genho_m_cap, "largest conjugation exponent m")->check(CLI::PositiveNumber);
        cmd->add_flag("--minima-only", minima_only, "skip the mirrored (maxima) variants");
        cmd->add_flag("--all-methods", all_methods, "run every method and list all that apply");
      }

      SearchConfig config() const {
        SearchConfig cfg;
        cfg.phi_bound   = phi_bound;
        cfg.concat_cap  = concat_cap;
        cfg.cycle_limit = cycle_limit;
        cfg.genho_m_cap = genho_m_cap;
        cfg.use_maxima  = !minima_only;
        cfg.all_methods = all_methods;
        return cfg;
      }
    };

    InputFormat resolve_format(std::string const& flag, std::string const& path) {
      if (flag.empty()) {
        return format_from_path(path);
      }
      return *parse_format(flag);
    }

    Subject load_subject(std::string const& path, std::string const& format, std::ostream& err) {
      auto const               text = read_file(path);
      std::vector<std::string> warnings;
      try {
        auto s = parse_subject(text, resolve_format(format, path), warnings);
        for (auto const& w : warnings) {
          err << path << ": warning: " << w << "\n";
        }
        return s;
      } catch (ParseError const& e) {
        throw InputError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": "
                         + e.what());
      } catch (std::invalid_argument const& e) {  // InvalidInput, DomainError
        throw InputError(path + ": " + e.what());
      }
    }

    // "ones" or comma separated name=value; a negative value flips the
    // generator and records its absolute value.
    Weighting parse_phi(std::string const& spec, Presentation const& p) {
      if (spec == "ones") {
        return Weighting::ones(p.generators);
      }
      Weighting   phi;
      std::string item;
      std::istringstream in(spec);
      while (std::getline(in, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) {
          throw InputError("--phi: expected name=value, got '" + item + "'");
        }
        Generator g(item.substr(0, eq));
        if (!p.has_generator(g)) {
          throw InputError("--phi: unknown generator '" + g.name() + "'");
        }
        BigInt v;
        try {
          v = BigInt(item.substr(eq + 1));
        } catch (std::exception const&) {
          throw InputError("--phi: bad value in '" + item + "'");
        }
        if (v < 0) {
          phi.flipped.insert(g);
          v = -v;
        }
        phi.values[g] = v;
      }
      return phi;
    }

    int cmd_check(std::string const& file,
                  std::string const& format,
                  SearchFlags const& flags,
                  std::string const& output,
                  std::string const& emit,
                  bool               timings,
                  std::ostream&      out,
                  std::ostream&      err) {
      auto const subject = load_subject(file, format, err);
      auto const report  = decide(subject, flags.config());
      out << (output == "json" ? report_to_json(report, timings) + "\n" : report_to_text(report, timings));
      if (!emit.empty() && report.certificate) {
        write_text(emit, certificate_to_json(*report.certificate) + "\n");
      }
      return report.locally_indicable() ? kExitCertified : kExitInconclusive;
    }

    int cmd_verify(std::string const& file,
                   std::string const& cert_file,
                   std::string const& format,
                   std::ostream&      out,
                   std::ostream&      err) {
      auto const  subject = load_subject(file, format, err);
      auto const  text    = read_file(cert_file);
      Certificate cert;
      try {
        cert = parse_certificate(text);
      } catch (CertificateFormatError const& e) {
        err << cert_file << ": malformed certificate: " << e.what() << "\n";
        return kExitVerifyFailed;
      } catch (CertificateVersionError const& e) {
        throw InputError(cert_file + ": " + e.what());
      } catch (CertificateSyntaxError const& e) {
        throw InputError(cert_file + ": " + e.what());
      }
      auto v = verify_certificate(subject, cert);
      if (!v) {
        out << "invalid: " << v.reason << "\n";
        return kExitVerifyFailed;
      }
      out << "valid: " << method_name(cert.method) << "\n";
      return kExitCertified;
    }

    int cmd_graphs(std::string const& file,
                   std::string const& format,
                   std::string const& style,
                   std::string const& dir,
                   std::ostream&      out,
                   std::ostream&      err) {
      auto const subject = load_subject(file, format, err);
      LabelledDigraph t, i;
      if (auto const* lot = std::get_if<Lot>(&subject)) {
        t = t_graph(*lot);
        i = i_graph(*lot);
      } else if (auto const* ap = std::get_if<AdianPresentation>(&subject)) {
        std::tie(t, i) = adian_graphs(*ap);
      } else {
        throw InputError(file + ": graphs need a LOT or Adian input");
      }
      auto render = [&](LabelledDigraph const& g, std::string const& name) {
        return style == "dot" ? to_dot(g, name) : to_text(g, name);
      };
      if (dir.empty()) {
        out << render(t, "T") << render(i, "I");
        return kExitCertified;
      }
      std::filesystem::create_directories(dir);
      auto const ext = style == "dot" ? ".dot" : ".txt";
      for (auto const& [g, name] : {std::pair{&t, "T"}, std::pair{&i, "I"}}) {
        auto path = (std::filesystem::path(dir) / (std::string(name) + ext)).string();
        write_text(path, render(*g, name));
        out << path << ": cyclomatic number " << cyclomatic_number(*g) << "\n";
      }
      return kExitCertified;
    }

    int cmd_cover(std::string const&      file,
                  std::string const&      format,
                  std::string const&      phi_spec,
                  std::vector<long> const& range,
                  bool                    reduce,
                  std::size_t             alpha,
                  SearchFlags const&      flags,
                  std::ostream&           out,
                  std::ostream&           err) {
      auto const p   = subject_presentation(load_subject(file, format, err));
      auto const phi = parse_phi(phi_spec, p);
      if (!is_surjective_weighting(p, phi)) {
        throw InputError("--phi: " + to_string(phi) + " is not a surjection onto Z (not in the kernel of the relation matrix)");
      }
      long j0 = 0, j1 = 0;
      if (range.size() == 2) {
        j0 = range[0];
        j1 = range[1];
      } else {
        auto const w = unflipped(phi);
        for (auto const& r : working_presentation(p, phi, false).relators) {
          j1 += static_cast<long>(weight_range(r, w));
        }
      }
      if (j0 > j1) {
        throw InputError("--range: inverted range");
      }
      auto const slab = build_cover_slab(p, phi, j0, j1);
      out << census_table(slab);
      if (reduce) {
        auto const trace = homological_reduce(slab);
        out << trace_to_json(slab, trace) << "\n";
        out << "replay: " << (replay_reduction(slab, trace) ? "ok" : "FAILED") << "\n";
      }
      if (alpha == 0) {
        return kExitCertified;
      }
      auto const result = check_pesos(p, phi, flags.config());
      if (!result) {
        out << "alpha: no concatenation order under this weighting (" << result.reason << ")\n";
        return kExitInconclusive;
      }
      auto const sys    = rewrite_system(p, *result.certificate);
      auto const report = alpha_sequence(sys, alpha);
      out << "alpha sequence (rho " << sys.rho << ", sigma " << sys.sigma << ", bound " << report.bound << ")\n";
      out << std::setw(6) << "j" << std::setw(10) << "alpha" << std::setw(12) << "length" << "\n";
      for (std::size_t j = 0; j < report.alphas.size(); ++j) {
        out << std::setw(6) << j + 1 << std::setw(10) << report.alphas[j] << std::setw(12) << report.lengths[j]
            << "\n";
      }
      if (report.length_capped) {
        out << "stopped after " << report.alphas.size() << " of " << report.requested
            << " rounds: path length limit\n";
      }
      out << "non-decreasing: " << (report.non_decreasing ? "yes" : "NO") << "\n";
      out << "bound satisfied: " << (report.within_bound ? "yes" : "NO") << "\n";
      if (report.stabilized_at) {
        out << "constant from j = " << *report.stabilized_at << "\n";
      } else {
        out << "stabilization not observed\n";
      }
      return report.non_decreasing && report.within_bound ? kExitCertified : kExitVerifyFailed;
    }

    int cmd_fuzz(FuzzOptions opt, SearchFlags const& flags, std::ostream& out) {
      if (opt.kind == InputFormat::Lot && opt.vertices < 3) {
        throw InputError("--vertices: reduced LOTs need at least 3 vertices");
      }
      opt.threads     = thread_budget();
      auto const rows = run_fuzz(opt, flags.config());
      out << fuzz_csv(rows, opt.timings);
      bool const all_verified = std::all_of(rows.begin(), rows.end(), [](FuzzRow const& r) {
        return r.method.empty() || r.verified;
      });
      return all_verified ? kExitCertified : kExitVerifyFailed;
    }

  }  // namespace

  int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Local indicability certificates for presentations, LOTs and Adian presentations", "locind"};
    app.require_subcommand(1);
    auto const formats = CLI::IsMember({"pres", "lot", "adian"});

    std::string file, cert_file, format, output = "text", emit, style = "text", dir, phi_spec = "ones";
    bool        timings = false, reduce = false;
    std::size_t alpha   = 0;
    std::vector<long> range;
    SearchFlags flags;
    FuzzOptions fuzz;
    std::string kind = "lot";

    auto* check = app.add_subcommand("check", "decide local indicability and print the report");
    check->add_option("file", file, "input file")->required();
    check->add_option("--format", format, "input format (default: by extension)")->check(formats);
    check->add_option("--output", output, "report format")->check(CLI::IsMember({"text", "json"}));
    check->add_option("--emit-cert", emit, "write the certificate JSON here");
    check->add_flag("--timings", timings, "include per-method timings");
    flags.attach(check);

    auto* verify = app.add_subcommand("verify", "replay a certificate against an input");
    verify->add_option("file", file, "input file")->required();
    verify->add_option("cert", cert_file, "certificate JSON")->required();
    verify->add_option("--format", format, "input format (default: by extension)")->check(formats);

    auto* graphs = app.add_subcommand("graphs", "export the graphs T and I");
    graphs->add_option("file", file, "LOT or Adian file")->required();
    graphs->add_option("--format", format, "input format (default: by extension)")->check(formats);
    graphs->add_option("--out", style, "dot or text")->check(CLI::IsMember({"dot", "text"}));
    graphs->add_option("--dir", dir, "write T and I files into this directory");

    auto* cover = app.add_subcommand("cover", "cover slab census, reductions and alpha sequences");
    cover->add_option("file", file, "input file")->required();
    cover->add_option("--format", format, "input format (default: by extension)")->check(formats);
    cover->add_option("--phi", phi_spec, "'ones' or name=value,...");
    cover->add_option("--range", range, "vertex range j0 j1")->expected(2);
    cover->add_flag("--reduce", reduce, "run homological reductions and print the trace");
    cover->add_option("--alpha", alpha, "rounds of the alpha sequence")->check(CLI::PositiveNumber);
    flags.attach(cover);

    auto* fz = app.add_subcommand("fuzz", "decide random reduced LOTs or Adian presentations, CSV out");
    fz->add_option("--vertices", fuzz.vertices, "vertices or generators")->check(CLI::Range(2, 1000));
    fz->add_option("--count", fuzz.count, "instances")->check(CLI::PositiveNumber);
    fz->add_option("--seed", fuzz.seed, "random seed");
    fz->add_option("--kind", kind, "lot or adian")->check(CLI::IsMember({"lot", "adian"}));
    fz->add_flag("--timings", fuzz.timings, "fill the millis column");
    fz->add_option("--emit-dir", fuzz.emit_dir, "write instances and certificates here");
    flags.attach(fz);

    std::vector<std::string> argv_store{"locind"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char const*> argv;
    for (auto const& a : argv_store) {
      argv.push_back(a.c_str());
    }
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::CallForHelp const& e) {
      return app.exit(e, out, err);
    } catch (CLI::CallForAllHelp const& e) {
      return app.exit(e, out, err);
    } catch (CLI::ParseError const& e) {
      app.exit(e, out, err);
      return kExitInputError;
    }

    try {
      if (*check) {
        return cmd_check(file, format, flags, output, emit, timings, out, err);
      }
      if (*verify) {
        return cmd_verify(file, cert_file, format, out, err);
      }
      if (*graphs) {
        return cmd_graphs(file, format, style, dir, out, err);
      }
      if (*cover) {
        return cmd_cover(file, format, phi_spec, range, reduce, alpha, flags, out, err);
      }
      fuzz.kind = kind == "adian" ? InputFormat::Adian : InputFormat::Lot;
      return cmd_fuzz(fuzz, flags, out);
    } catch (InputError const& e) {
      err << "error: " << e.what() << "\n";
      return kExitInputError;
    } catch (std::invalid_argument const& e) {
      err << "error: " << e.what() << "\n";
      return kExitInputError;
    } catch (CapExceeded const& e) {
      err << "error: " << e.what() << "\n";
      return kExitInputError;
    }
  }

}  // namespace locind
