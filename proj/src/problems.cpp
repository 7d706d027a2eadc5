#include "iprox/problems.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace iprox {

std::uint64_t SplitMix64::next() {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
  return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (has_cached) {
    has_cached = false;
    return cached;
  }
  const double u1 = rng.next_unit();
  const double u2 = rng.next_unit();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached = radius * std::sin(angle);
  has_cached = true;
  return radius * std::cos(angle);
}

namespace {

void fill_gaussian(Matrix& mat, std::uint64_t seed) {
  GaussianStream stream(seed);
  for (Eigen::Index i = 0; i < mat.rows(); ++i) {
    for (Eigen::Index j = 0; j < mat.cols(); ++j) {
      mat(i, j) = stream.next();
    }
  }
}

void fill_gaussian(Vector& vec, std::uint64_t seed) {
  GaussianStream stream(seed);
  for (Eigen::Index i = 0; i < vec.size(); ++i) vec(i) = stream.next();
}

Vector residual_weights(const ImageRestorationInstance& inst, const Vector& x) {
  const Vector w = inst.A * x - inst.b;
  return w.unaryExpr([](double wi) { return wi / (1.0 + wi * wi); });
}

}  // namespace

double f_value(const ImageRestorationInstance& inst, const Vector& x) {
  if (x.size() != inst.n()) throw std::invalid_argument("f_value: dimension mismatch");
  const Vector w = inst.A * x - inst.b;
  return w.unaryExpr([](double wi) { return std::log1p(wi * wi); }).sum();
}

Vector f_gradient(const ImageRestorationInstance& inst, const Vector& x) {
  if (x.size() != inst.n()) {
    throw std::invalid_argument("f_gradient: dimension mismatch");
  }
  return 2.0 * (inst.A.transpose() * residual_weights(inst, x));
}

Vector f_hessian_apply(const ImageRestorationInstance& inst, const Vector& x,
                       const Vector& v) {
  if (x.size() != inst.n() || v.size() != inst.n()) {
    throw std::invalid_argument("f_hessian_apply: dimension mismatch");
  }
  const Vector w = inst.A * x - inst.b;
  // d/dw [w/(1+w^2)] = (1 - w^2)/(1 + w^2)^2, applied diagonally.
  const Vector diag = w.unaryExpr([](double wi) {
    const double denom = 1.0 + wi * wi;
    return (1.0 - wi * wi) / (denom * denom);
  });
  return 2.0 * (inst.A.transpose() * diag.cwiseProduct(inst.A * v).eval());
}

double lipschitz_L(const ImageRestorationInstance& inst) {
  const double col_sum = inst.A.cwiseAbs().colwise().sum().maxCoeff();
  const double row_sum = inst.A.cwiseAbs().rowwise().sum().maxCoeff();
  return 2.0 * col_sum * row_sum;
}

ImageRestorationInstance generate_instance(int m, int n, double gamma,
                                           std::uint64_t seed) {
  if (m < 1 || n < 1) throw std::invalid_argument("generate_instance: m, n >= 1");
  SplitMix64 root(seed);
  const std::uint64_t seed_a = root.next();
  const std::uint64_t seed_b = root.next();
  const std::uint64_t seed_bmat = root.next();

  ImageRestorationInstance inst;
  inst.A.resize(n, n);
  inst.b.resize(n);
  inst.Bmat.resize(m, n);
  inst.gamma = gamma;
  inst.seed = seed;
  fill_gaussian(inst.A, seed_a);
  fill_gaussian(inst.b, seed_b);
  fill_gaussian(inst.Bmat, seed_bmat);
  return inst;
}

namespace {

constexpr char kMagic[8] = {'I', 'P', 'R', 'X', 'I', 'N', 'S', '1'};

void write_u64(std::ostream& os, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t read_u64(std::istream& is) {
  unsigned char buf[8];
  is.read(reinterpret_cast<char*>(buf), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

void write_doubles(std::ostream& os, const double* data, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t bits;
    std::memcpy(&bits, &data[i], 8);
    write_u64(os, bits);
  }
}

void read_doubles(std::istream& is, double* data, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t bits = read_u64(is);
    std::memcpy(&data[i], &bits, 8);
  }
}

}  // namespace

void save_instance(const ImageRestorationInstance& inst, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("save_instance: cannot open " + path);
  os.write(kMagic, sizeof(kMagic));
  write_u64(os, static_cast<std::uint64_t>(inst.m()));
  write_u64(os, static_cast<std::uint64_t>(inst.n()));
  write_u64(os, inst.seed);
  write_doubles(os, &inst.gamma, 1);
  // Row-major payload so the container layout is independent of the
  // in-memory matrix storage order.
  for (Eigen::Index i = 0; i < inst.A.rows(); ++i) {
    for (Eigen::Index j = 0; j < inst.A.cols(); ++j) write_doubles(os, &inst.A(i, j), 1);
  }
  write_doubles(os, inst.b.data(), static_cast<std::size_t>(inst.b.size()));
  for (Eigen::Index i = 0; i < inst.Bmat.rows(); ++i) {
    for (Eigen::Index j = 0; j < inst.Bmat.cols(); ++j) {
      write_doubles(os, &inst.Bmat(i, j), 1);
    }
  }
  if (!os) throw std::runtime_error("save_instance: write failed for " + path);
}

ImageRestorationInstance load_instance(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_instance: cannot open " + path);
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("load_instance: bad magic in " + path);
  }
  const auto m = static_cast<Eigen::Index>(read_u64(is));
  const auto n = static_cast<Eigen::Index>(read_u64(is));
  ImageRestorationInstance inst;
  inst.seed = read_u64(is);
  read_doubles(is, &inst.gamma, 1);
  inst.A.resize(n, n);
  inst.b.resize(n);
  inst.Bmat.resize(m, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) read_doubles(is, &inst.A(i, j), 1);
  }
  read_doubles(is, inst.b.data(), static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) read_doubles(is, &inst.Bmat(i, j), 1);
  }
  if (!is) throw std::runtime_error("load_instance: truncated file " + path);
  return inst;
}

CompositeProblem make_problem(const ImageRestorationInstance& inst,
                              const DualProxSolver* solver) {
  CompositeProblem problem;
  problem.f.value = [&inst](const Vector& x) { return f_value(inst, x); };
  problem.f.gradient = [&inst](const Vector& x) { return f_gradient(inst, x); };
  problem.f.hessian_apply = [&inst](const Vector& x, const Vector& v) {
    return f_hessian_apply(inst, x, v);
  };
  problem.f.descent_L = lipschitz_L(inst);

  problem.g.value = [&inst](const Vector& x) {
    return inst.gamma * (inst.Bmat * x).lpNorm<1>();
  };
  problem.g.modulus_rho = 0.0;
  if (solver != nullptr) {
    const double gamma = inst.gamma;
    problem.g.prox_to_tol = [solver, gamma](double lambda, const Vector& anchor,
                                            double gap_tol) {
      SubproblemSpec spec;
      spec.Bmat = &solver->B();
      spec.gamma = gamma;
      spec.lambda = lambda;
      spec.anchor = anchor;
      spec.omega = gap_tol;
      return solver->solve(spec).p;
    };
  }
  return problem;
}

CompositeProblem make_quadratic_l1(const Matrix& Q, const Vector& c, double gamma) {
  CompositeProblem problem;
  problem.f.value = [Q, c](const Vector& x) {
    return 0.5 * x.dot(Q * x) - c.dot(x);
  };
  problem.f.gradient = [Q, c](const Vector& x) { return (Q * x - c).eval(); };
  problem.f.hessian_apply = [Q](const Vector&, const Vector& v) {
    return (Q * v).eval();
  };
  problem.f.descent_L = Q.operatorNorm();
  problem.g = make_l1_part(gamma);
  return problem;
}

WeaklyConvexPart make_l1_part(double gamma) {
  WeaklyConvexPart g;
  g.value = [gamma](const Vector& x) { return gamma * x.lpNorm<1>(); };
  g.modulus_rho = 0.0;
  g.exact_prox = [gamma](double lambda, const Vector& x) {
    return soft_threshold(x, lambda * gamma);
  };
  return g;
}

}  // namespace iprox
