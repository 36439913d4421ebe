#include "locind/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

namespace locind {

  namespace {

    std::size_t uniform(std::mt19937_64& rng, std::size_t n) {
      return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    }

    Generator letter_name(std::size_t i, std::size_t n) {
      if (n <= 26) {
        return Generator(std::string(1, static_cast<char>('a' + i)));
      }
      return Generator("g" + std::to_string(i));
    }

    void write_file(std::filesystem::path const& path, std::string const& text) {
      std::ofstream out(path);
      out << text;
    }

  }  // namespace

  Lot random_lot(std::size_t n, std::mt19937_64& rng) {
    if (n < 3) {
      throw InvalidInput("reduced LOTs need at least 3 vertices");
    }
    Lot lot;
    for (std::size_t i = 0; i < n; ++i) {
      lot.vertices.emplace_back(std::to_string(i));
    }
    std::vector<std::size_t> code(n - 2);
    for (auto& c : code) {
      c = uniform(rng, n);
    }
    std::vector<std::size_t> degree(n, 1);
    for (auto c : code) {
      ++degree[c];
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (auto c : code) {
      std::size_t leaf = 0;
      while (degree[leaf] != 1) {
        ++leaf;
      }
      edges.emplace_back(leaf, c);
      --degree[leaf];
      --degree[c];
    }
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i) {
      if (degree[i] == 1) {
        rest.push_back(i);
      }
    }
    edges.emplace_back(rest[0], rest[1]);

    for (auto [u, v] : edges) {
      if (uniform(rng, 2) == 1) {
        std::swap(u, v);
      }
      std::size_t label = uniform(rng, n - 2);
      for (auto endpoint : {std::min(u, v), std::max(u, v)}) {
        if (label >= endpoint) {
          ++label;
        }
      }
      lot.edges.push_back({lot.vertices[u], lot.vertices[v], lot.vertices[label]});
    }
    return lot;
  }

  AdianPresentation random_adian(std::size_t n, std::mt19937_64& rng) {
    if (n < 2) {
      throw InvalidInput("Adian fuzzing needs at least 2 generators");
    }
    AdianPresentation p;
    for (std::size_t i = 0; i < n; ++i) {
      p.generators.push_back(letter_name(i, n));
    }
    auto side = [&] {
      Word w;
      auto len = 1 + uniform(rng, 3);
      for (std::size_t k = 0; k < len; ++k) {
        w.push_back(Letter(p.generators[uniform(rng, n)], 1));
      }
      return w;
    };
    for (std::size_t r = 0; r + 1 < n; ++r) {
      while (true) {
        Word u = side(), v = side();
        if (u[0] != v[0] && u[u.size() - 1] != v[v.size() - 1]) {
          p.relations.push_back({std::move(u), std::move(v)});
          break;
        }
      }
    }
    return p;
  }

  std::string instance_hash(std::string const& serialized) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : serialized) {
      h ^= ch;
      h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
  }

  std::size_t thread_budget() {
    if (char const* env = std::getenv("LOCIND_THREADS")) {
      char* end = nullptr;
      auto  v   = std::strtol(env, &end, 10);
      if (end != env && v > 0) {
        return static_cast<std::size_t>(v);
      }
    }
    return std::max(1u, std::thread::hardware_concurrency());
  }

  std::vector<FuzzRow> run_fuzz(FuzzOptions const& opt, SearchConfig const& cfg) {
    std::mt19937_64      rng(opt.seed);
    std::vector<Subject> instances;
    for (std::size_t i = 0; i < opt.count; ++i) {
      if (opt.kind == InputFormat::Adian) {
        instances.emplace_back(random_adian(opt.vertices, rng));
      } else {
        instances.emplace_back(random_lot(opt.vertices, rng));
      }
    }
    std::vector<FuzzRow>     rows(instances.size());
    std::atomic<std::size_t> next{0};
    auto                     worker = [&] {
      for (auto i = next++; i < instances.size(); i = next++) {
        auto const& subject = instances[i];
        auto const  text    = std::visit([](auto const& s) { return serialize(s); }, subject);
        auto const  t0      = std::chrono::steady_clock::now();
        auto const  report  = decide(subject, cfg);
        auto&       row     = rows[i];
        row.millis  = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        row.hash    = instance_hash(text);
        row.kind    = subject_kind(subject);
        row.verdict = report.locally_indicable() ? "LocallyIndicable" : "Inconclusive";
        if (report.certificate) {
          row.method   = std::string(method_name(report.certificate->method));
          row.verified = static_cast<bool>(verify_certificate(subject, *report.certificate));
        }
        if (!opt.emit_dir.empty()) {
          std::filesystem::path dir(opt.emit_dir);
          auto const ext = opt.kind == InputFormat::Adian ? ".adian" : ".lot";
          write_file(dir / (row.hash + ext), text);
          if (report.certificate) {
            write_file(dir / (row.hash + ".cert.json"), certificate_to_json(*report.certificate));
          }
        }
      }
    };
    if (!opt.emit_dir.empty()) {
      std::filesystem::create_directories(opt.emit_dir);
    }
    auto const n = std::max<std::size_t>(1, std::min(opt.threads, instances.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n; ++t) {
      pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
      t.join();
    }
    return rows;
  }

  std::string fuzz_csv(std::vector<FuzzRow> const& rows, bool timings) {
    std::ostringstream out;
    out << "hash,kind,verdict,method,millis\n";
    for (auto const& r : rows) {
      out << r.hash << ',' << r.kind << ',' << r.verdict << ',' << r.method << ',';
      if (timings) {
        out << std::fixed << std::setprecision(3) << r.millis;
      } else {
        out << 0;
      }
      out << "\n";
    }
    return out.str();
  }

}  // namespace locind
