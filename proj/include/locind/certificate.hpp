#pragma once

// Certificates: the method applied plus every witness needed to re-check the
// verdict without search, and their JSON form.

#include "locind/presentation.hpp"
#include "locind/word.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace locind {

  enum class Method { OneRelator, Main, Pesos, Genho, Weak, Ciclos, Adian, Ciclosetiq };

  std::string_view      method_name(Method m);
  std::optional<Method> parse_method(std::string_view name);

  struct ConcatStep {
    std::size_t                   relator;
    Generator                     witness;
    std::vector<Generator>        multiset;  // entries in word order
    std::optional<CountSignature> counts;    // weak mode only

    bool operator==(ConcatStep const&) const = default;
  };

  struct ConcatOrder {
    std::vector<ConcatStep> steps;

    std::vector<std::size_t> order() const;
    bool operator==(ConcatOrder const&) const = default;
  };

  struct GenhoWitness {
    std::size_t         relator;   // index of r in the working presentation
    Generator           a;         // relative-minimum generator
    Generator           c;
    std::size_t         m;
    std::size_t         position;  // 0-based letter index of the relative minimum
    RelativeMinimumCase which;

    bool operator==(GenhoWitness const&) const = default;
  };

  struct CycleArc {
    std::size_t edge;     // LOT edge / arc index
    bool        forward;  // arc oriented along the traversal

    bool operator==(CycleArc const&) const = default;
  };

  struct CycleAssignment {
    std::size_t           component;  // index into the side graph's component list
    Generator             label;
    std::size_t           base_edge;
    std::vector<CycleArc> cycle;      // starts at the base arc

    bool operator==(CycleAssignment const&) const = default;
  };

  struct GraphWitness {
    char                         side = 'T';  // 'T' or 'I'
    std::size_t                  cyclomatic = 0;
    std::optional<std::size_t>   removed_edge;
    std::vector<CycleAssignment> assignments;
    std::vector<std::string>     readings;

    bool operator==(GraphWitness const&) const = default;
  };

  // Owning, deep-copying optional pointer.
  template <class T>
  class Box {
   public:
    Box() = default;
    Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
    Box(Box const& o) : ptr_(o.ptr_ ? std::make_unique<T>(*o.ptr_) : nullptr) {}
    Box(Box&&) noexcept = default;
    Box& operator=(Box const& o) {
      ptr_ = o.ptr_ ? std::make_unique<T>(*o.ptr_) : nullptr;
      return *this;
    }
    Box& operator=(Box&&) noexcept = default;

    explicit operator bool() const noexcept {
      return static_cast<bool>(ptr_);
    }
    T& operator*() const {
      return *ptr_;
    }
    T* operator->() const {
      return ptr_.get();
    }
    void reset() {
      ptr_.reset();
    }

    bool operator==(Box const& o) const {
      if (!ptr_ || !o.ptr_) {
        return !ptr_ && !o.ptr_;
      }
      return *ptr_ == *o.ptr_;
    }

   private:
    std::unique_ptr<T> ptr_;
  };

  struct CertSubject {
    std::string kind;  // presentation | lot | adian
    std::string text;  // canonical serialization

    bool operator==(CertSubject const&) const = default;
  };

  struct Certificate {
    int                          version = 1;
    Method                       method  = Method::OneRelator;
    CertSubject                  subject;
    Weighting                    phi;
    bool                         mirrored = false;
    std::optional<std::size_t>   distinguished_relator;
    std::optional<ConcatOrder>   concat;
    std::optional<TransformScript> transform;
    std::optional<GenhoWitness>  genho;
    std::optional<GraphWitness>  graph;
    Box<Certificate>             inner;

    bool operator==(Certificate const&) const;
  };

  inline constexpr int kCertificateVersion = 1;

  // Text that is not JSON at all.
  class CertificateSyntaxError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };
  // A version field other than kCertificateVersion.
  class CertificateVersionError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };
  // JSON that does not have the certificate shape.
  class CertificateFormatError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  std::string certificate_to_json(Certificate const& cert, int indent = 2);
  Certificate parse_certificate(std::string_view text);

  std::string script_to_json(TransformScript const& script, int indent = -1);

}  // namespace locind
