#ifndef VS_COMMON_HPP
#define VS_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace vs {

using cplx = std::complex<double>;

inline constexpr double PI = 3.141592653589793238462643383279502884;
inline constexpr double LN10 = 2.302585092994045684017991454684364208;

// Error categories map onto the CLI exit codes.
enum class ErrClass {
  Domain = 2,     // bad parameters / preconditions
  Numerical = 3,  // convergence / resolution failures
  Io = 4,         // file and parse errors
};

class Error : public std::runtime_error {
 public:
  Error(ErrClass cls, std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), cls_(cls), kind_(std::move(kind)) {}
  ErrClass cls() const { return cls_; }
  const std::string& kind() const { return kind_; }

 private:
  ErrClass cls_;
  std::string kind_;
};

inline Error domain_error(const std::string& kind, const std::string& what) {
  return Error(ErrClass::Domain, kind, what);
}
inline Error numerical_error(const std::string& kind, const std::string& what) {
  return Error(ErrClass::Numerical, kind, what);
}
inline Error io_error(const std::string& kind, const std::string& what) {
  return Error(ErrClass::Io, kind, what);
}

}  // namespace vs

#endif  // VS_COMMON_HPP
