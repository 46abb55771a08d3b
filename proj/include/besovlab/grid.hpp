#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace besovlab {

using cd = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

enum class Domain { physical, frequency };

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Uniform periodic grid on the box [-L, L)^N.  Frequency nodes use the
/// centered (fftshift) ordering: axis index c maps to xi = pi*(c - n/2)/L.
class Grid {
 public:
  Grid(int dim, double half_width, int samples);

  int dim() const { return dim_; }
  double half_width() const { return half_width_; }
  int samples() const { return samples_; }
  double spacing() const { return 2.0 * half_width_ / samples_; }
  std::int64_t points() const { return points_; }

  /// Physical coordinate along one axis: x = -L + c*h.
  double coord(int c) const { return -half_width_ + c * spacing(); }
  /// Frequency node along one axis (centered ordering).
  double freq(int c) const {
    return kPi * (c - samples_ / 2) / half_width_;
  }
  /// Largest resolvable |xi| (the Nyquist node).
  double max_freq() const { return kPi / spacing(); }

  void unravel(std::int64_t p, int* idx) const {
    for (int a = dim_ - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(p % samples_);
      p /= samples_;
    }
  }
  std::int64_t ravel(const int* idx) const {
    std::int64_t p = 0;
    for (int a = 0; a < dim_; ++a) p = p * samples_ + idx[a];
    return p;
  }

  /// Frequency vector of the point with linear index p (centered ordering).
  void freq_at(std::int64_t p, double* xi) const {
    int idx[3];
    unravel(p, idx);
    for (int a = 0; a < dim_; ++a) xi[a] = freq(idx[a]);
  }

  bool operator==(const Grid& o) const {
    return dim_ == o.dim_ && half_width_ == o.half_width_ &&
           samples_ == o.samples_;
  }

 private:
  int dim_;
  double half_width_;
  int samples_;
  std::int64_t points_;
};

/// E-valued samples on a grid, component-interleaved: values[p*M + c].
struct Field {
  Grid grid;
  int components;
  Domain domain;
  std::vector<cd> values;

  Field(const Grid& g, int M, Domain d = Domain::physical)
      : grid(g), components(M), domain(d),
        values(static_cast<std::size_t>(g.points()) * M) {
    if (M < 1) throw usage_error("Field: components must be >= 1");
  }

  cd& at(std::int64_t p, int c) { return values[p * components + c]; }
  const cd& at(std::int64_t p, int c) const {
    return values[p * components + c];
  }
  std::span<cd> point(std::int64_t p) {
    return {values.data() + p * components, static_cast<std::size_t>(components)};
  }
  std::span<const cd> point(std::int64_t p) const {
    return {values.data() + p * components, static_cast<std::size_t>(components)};
  }

  bool finite() const;

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(cd c);
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cd c, Field f);

/// JSON (de)serialization.  Layout: {"dim","half_width","samples",
/// "components","domain","values":[re,im,re,im,...]} with values row-major
/// over (point, component), points in C order, frequency axes centered.
std::string field_to_json(const Field& f);
Field field_from_json(const std::string& text);
void save_field(const Field& f, const std::string& path);
Field load_field(const std::string& path);

}  // namespace besovlab
