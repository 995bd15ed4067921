#ifndef IDPACK_ERRORS_HPP
#define IDPACK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace idpack {

// Base class for all library errors. `code()` is a stable machine-readable
// identifier used by the CLI when emitting error JSON.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

#define IDPACK_DEFINE_ERROR(NAME, CODE)                   \
  class NAME : public Error {                             \
  public:                                                 \
    explicit NAME(const std::string& msg)                 \
        : Error(CODE, msg) {}                             \
  }

// mesh
IDPACK_DEFINE_ERROR(BadMatchingError, "bad_matching");
IDPACK_DEFINE_ERROR(EulerMismatchError, "euler_mismatch");
IDPACK_DEFINE_ERROR(DanglingVertexError, "dangling_vertex");
IDPACK_DEFINE_ERROR(UnflippableEdgeError, "unflippable_edge");
IDPACK_DEFINE_ERROR(SearchCapError, "search_cap_exceeded");

// geometry / delaunay
IDPACK_DEFINE_ERROR(NonPositiveInputError, "non_positive_input");
IDPACK_DEFINE_ERROR(DomainError, "domain_error");
IDPACK_DEFINE_ERROR(TriangleInequalityError, "triangle_inequality_violated");
IDPACK_DEFINE_ERROR(NonpositiveDenominatorError, "nonpositive_denominator");
IDPACK_DEFINE_ERROR(FlipBudgetError, "flip_budget_exceeded");

// hyperbolic / flow
IDPACK_DEFINE_ERROR(NotDelaunayError, "not_delaunay");
IDPACK_DEFINE_ERROR(TargetInvalidError, "target_invalid");
IDPACK_DEFINE_ERROR(MaxIterationsError, "max_iterations");
IDPACK_DEFINE_ERROR(SingularBeyondKernelError, "singular_beyond_kernel");

// io
IDPACK_DEFINE_ERROR(IoError, "io_error");

#undef IDPACK_DEFINE_ERROR

}  // namespace idpack

#endif
