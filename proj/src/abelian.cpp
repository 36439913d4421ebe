#include "locind/abelian.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace locind {

  IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) {
      throw DomainError("matrix entry count does not match its dimensions");
    }
  }

  IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = 1;
    }
    return m;
  }

  void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) {
      return;
    }
    for (std::size_t j = 0; j < cols_; ++j) {
      std::swap((*this)(a, j), (*this)(b, j));
    }
  }

  void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) {
      return;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      std::swap((*this)(i, a), (*this)(i, b));
    }
  }

  void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, BigInt const& factor) {
    if (factor == 0) {
      return;
    }
    for (std::size_t j = 0; j < cols_; ++j) {
      (*this)(dst, j) += factor * (*this)(src, j);
    }
  }

  void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, BigInt const& factor) {
    if (factor == 0) {
      return;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      (*this)(i, dst) += factor * (*this)(i, src);
    }
  }

  void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      (*this)(i, j) = -(*this)(i, j);
    }
  }

  IntMatrix operator*(IntMatrix const& a, IntMatrix const& b) {
    if (a.cols() != b.rows()) {
      throw DomainError("matrix dimensions do not agree");
    }
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a(i, k) == 0) {
          continue;
        }
        for (std::size_t j = 0; j < b.cols(); ++j) {
          out(i, j) += a(i, k) * b(k, j);
        }
      }
    }
    return out;
  }

  BigInt determinant(IntMatrix const& m) {
    if (m.rows() != m.cols()) {
      throw DomainError("determinant of a non-square matrix");
    }
    auto const n = m.rows();
    if (n == 0) {
      return 1;
    }
    // Bareiss elimination: every division below is exact.
    IntMatrix a     = m;
    BigInt    prev  = 1;
    int       sign  = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (a(k, k) == 0) {
        std::size_t swap_with = k + 1;
        while (swap_with < n && a(swap_with, k) == 0) {
          ++swap_with;
        }
        if (swap_with == n) {
          return 0;
        }
        a.swap_rows(k, swap_with);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        }
      }
      prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
  }

  namespace {
    BigInt abs_value(BigInt const& x) {
      return x < 0 ? BigInt(-x) : x;
    }

    // Least |entry| among nonzero entries of the lower-right block from t.
    bool find_pivot(IntMatrix const& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
      bool   found = false;
      BigInt best;
      for (std::size_t i = t; i < d.rows(); ++i) {
        for (std::size_t j = t; j < d.cols(); ++j) {
          if (d(i, j) != 0 && (!found || abs_value(d(i, j)) < best)) {
            best  = abs_value(d(i, j));
            pi    = i;
            pj    = j;
            found = true;
          }
        }
      }
      return found;
    }
  }  // namespace

  SmithDecomposition smith_normal_form(IntMatrix const& m) {
    SmithDecomposition out{IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), m, {}};
    auto&              D = out.D;
    auto&              U = out.U;
    auto&              V = out.V;

    auto swap_rows = [&](std::size_t a, std::size_t b) {
      D.swap_rows(a, b);
      U.swap_rows(a, b);
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
      D.swap_cols(a, b);
      V.swap_cols(a, b);
    };

    auto const limit = std::min(m.rows(), m.cols());
    for (std::size_t t = 0; t < limit; ++t) {
      std::size_t pi = 0, pj = 0;
      if (!find_pivot(D, t, pi, pj)) {
        break;
      }
      swap_rows(t, pi);
      swap_cols(t, pj);
      while (true) {
        bool clean = true;
        for (std::size_t i = t + 1; i < D.rows(); ++i) {
          if (D(i, t) != 0) {
            BigInt q = D(i, t) / D(t, t);
            D.add_row_multiple(i, t, -q);
            U.add_row_multiple(i, t, -q);
            clean = clean && D(i, t) == 0;
          }
        }
        for (std::size_t j = t + 1; j < D.cols(); ++j) {
          if (D(t, j) != 0) {
            BigInt q = D(t, j) / D(t, t);
            D.add_col_multiple(j, t, -q);
            V.add_col_multiple(j, t, -q);
            clean = clean && D(t, j) == 0;
          }
        }
        if (!clean) {
          // A remainder smaller than the pivot is left in row or column t.
          std::size_t bi = t, bj = t;
          BigInt      best = abs_value(D(t, t));
          for (std::size_t i = t + 1; i < D.rows(); ++i) {
            if (D(i, t) != 0 && abs_value(D(i, t)) < best) {
              best = abs_value(D(i, t));
              bi   = i;
              bj   = t;
            }
          }
          for (std::size_t j = t + 1; j < D.cols(); ++j) {
            if (D(t, j) != 0 && abs_value(D(t, j)) < best) {
              best = abs_value(D(t, j));
              bi   = t;
              bj   = j;
            }
          }
          swap_rows(t, bi);
          swap_cols(t, bj);
          continue;
        }
        // Row and column t are clear; enforce divisibility of the rest.
        bool moved = false;
        for (std::size_t i = t + 1; i < D.rows() && !moved; ++i) {
          for (std::size_t j = t + 1; j < D.cols() && !moved; ++j) {
            if (D(i, j) % D(t, t) != 0) {
              D.add_row_multiple(t, i, 1);
              U.add_row_multiple(t, i, 1);
              moved = true;
            }
          }
        }
        if (!moved) {
          break;
        }
      }
      if (D(t, t) < 0) {
        D.negate_row(t);
        U.negate_row(t);
      }
      out.invariant_factors.push_back(D(t, t));
    }
    return out;
  }

  IntMatrix relation_matrix(Presentation const& p) {
    IntMatrix m(p.relators.size(), p.generators.size());
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      for (auto const& l : p.relators[i]) {
        auto j = p.index_of(l.gen);
        if (!j) {
          throw DomainError("relator uses unknown generator '" + l.gen.name() + "'");
        }
        m(i, *j) += l.sign;
      }
    }
    return m;
  }

  HomologySummary homology_of(IntMatrix const& relations) {
    auto            snf = smith_normal_form(relations);
    HomologySummary out;
    out.free_rank = relations.cols() - snf.rank();
    for (auto const& d : snf.invariant_factors) {
      if (d > 1) {
        out.torsion.push_back(d);
      }
    }
    return out;
  }

  HomologySummary h1(Presentation const& p) {
    return homology_of(relation_matrix(p));
  }

  bool is_homology_circle(Presentation const& p) {
    if (p.deficiency() != 1) {
      return false;
    }
    auto h = h1(p);
    return h.free_rank == 1 && h.torsion.empty();
  }

  bool is_homology_wedge(Presentation const& p) {
    if (p.deficiency() < 1) {
      return false;
    }
    auto h = h1(p);
    return h.free_rank == static_cast<std::size_t>(p.deficiency()) && h.torsion.empty();
  }

  bool is_surjective_weighting(Presentation const& p, Weighting const& phi) {
    BigInt g = 0;
    for (auto const& gen : p.generators) {
      auto it = phi.values.find(gen);
      if (it == phi.values.end() || it->second < 0) {
        return false;
      }
      g = boost::multiprecision::gcd(g, it->second);
    }
    if (g != 1 || phi.values.size() != p.generators.size()) {
      return false;
    }
    for (auto const& f : phi.flipped) {
      if (!p.has_generator(f)) {
        return false;
      }
    }
    for (auto const& r : p.relators) {
      BigInt sum = 0;
      for (auto const& l : r) {
        int const sign = phi.flipped.count(l.gen) != 0 ? -l.sign : l.sign;
        sum += sign * phi.values.at(l.gen);
      }
      if (sum != 0) {
        return false;
      }
    }
    return true;
  }

  std::vector<Weighting> enumerate_weightings(Presentation const& p,
                                              std::size_t         bound,
                                              bool                require_strictly_positive,
                                              std::string*        note,
                                              std::size_t         max_box) {
    auto const n   = p.generators.size();
    auto const M   = relation_matrix(p);
    auto const snf = smith_normal_form(M);
    auto const dim = n - snf.rank();
    if (dim == 0 || n == 0) {
      return {};
    }

    // Largest coefficient bound whose box fits in max_box points.
    std::size_t coeff_bound = bound;
    auto        box_size    = [&](std::size_t b) {
      double size = 1;
      for (std::size_t i = 0; i < dim; ++i) {
        size *= static_cast<double>(2 * b + 1);
      }
      return size;
    };
    while (coeff_bound > 0 && box_size(coeff_bound) > static_cast<double>(max_box)) {
      --coeff_bound;
    }
    if (coeff_bound < bound && note != nullptr) {
      *note = "kernel has rank " + std::to_string(dim) + "; coefficient box reduced from "
              + std::to_string(bound) + " to " + std::to_string(coeff_bound);
    }

    std::vector<std::vector<BigInt>> basis;
    for (std::size_t c = snf.rank(); c < n; ++c) {
      std::vector<BigInt> v(n);
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = snf.V(i, c);
      }
      basis.push_back(std::move(v));
    }

    BigInt const                    B(bound);
    std::set<std::vector<BigInt>>   seen;
    std::vector<std::vector<BigInt>> found;
    auto consider = [&](std::vector<BigInt> v) {
      BigInt g = 0;
      for (auto const& x : v) {
        if (abs_value(x) > B) {
          return;
        }
        g = boost::multiprecision::gcd(g, x);
      }
      if (g != 1) {
        return;
      }
      auto first = std::find_if(v.begin(), v.end(), [](BigInt const& x) { return x != 0; });
      if (*first < 0) {
        for (auto& x : v) {
          x = -x;
        }
      }
      if (require_strictly_positive
          && !std::all_of(v.begin(), v.end(), [](BigInt const& x) { return x > 0; })) {
        return;
      }
      if (seen.insert(v).second) {
        found.push_back(std::move(v));
      }
    };

    std::vector<long> coeff(dim, -static_cast<long>(coeff_bound));
    while (true) {
      std::vector<BigInt> v(n);
      for (std::size_t b = 0; b < dim; ++b) {
        if (coeff[b] == 0) {
          continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
          v[i] += coeff[b] * basis[b][i];
        }
      }
      consider(std::move(v));
      std::size_t k = 0;
      while (k < dim && coeff[k] == static_cast<long>(coeff_bound)) {
        coeff[k] = -static_cast<long>(coeff_bound);
        ++k;
      }
      if (k == dim) {
        break;
      }
      ++coeff[k];
    }

    std::vector<BigInt> const ones(n, BigInt(1));
    bool ones_in_kernel = true;
    for (std::size_t i = 0; i < M.rows() && ones_in_kernel; ++i) {
      BigInt sum = 0;
      for (std::size_t j = 0; j < n; ++j) {
        sum += M(i, j);
      }
      ones_in_kernel = sum == 0;
    }
    if (ones_in_kernel && bound >= 1 && seen.insert(ones).second) {
      found.push_back(ones);
    }

    auto l1 = [](std::vector<BigInt> const& v) {
      BigInt s = 0;
      for (auto const& x : v) {
        s += abs_value(x);
      }
      return s;
    };
    std::sort(found.begin(), found.end(), [&](auto const& x, auto const& y) {
      bool const xo = x == ones, yo = y == ones;
      if (xo != yo) {
        return xo;
      }
      auto lx = l1(x), ly = l1(y);
      if (lx != ly) {
        return lx < ly;
      }
      return x < y;
    });

    std::vector<Weighting> out;
    for (auto const& v : found) {
      Weighting phi;
      for (std::size_t i = 0; i < n; ++i) {
        phi.values.emplace(p.generators[i], abs_value(v[i]));
        if (v[i] < 0) {
          phi.flipped.insert(p.generators[i]);
        }
      }
      out.push_back(std::move(phi));
    }
    return out;
  }

}  // namespace locind
