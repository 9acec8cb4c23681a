#include "zeq/computable.hpp"

#include <fcntl.h>
#include <mpfr.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstring>
#include <sstream>

namespace zeq {

namespace {

Rat mpfr_to_rat(mpfr_t x) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), x);
  return Rat(std::move(q));
}

/// Enclose a unary monotone mpfr function of a rational argument.
template <class F>
Ball mpfr_enclose(const Rat& arg, unsigned p, F&& eval) {
  mpfr_prec_t w = std::max<mpfr_prec_t>(64, p + 16);
  mpq_class a = arg.mpq();
  for (;;) {
    mpfr_t xlo, xhi, lo, hi;
    mpfr_inits2(w, xlo, xhi, lo, hi, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_q(xlo, a.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(xhi, a.get_mpq_t(), MPFR_RNDU);
    eval(lo, xlo, MPFR_RNDD);
    eval(hi, xhi, MPFR_RNDU);
    Rat rlo = mpfr_to_rat(lo), rhi = mpfr_to_rat(hi);
    mpfr_clears(xlo, xhi, lo, hi, static_cast<mpfr_ptr>(nullptr));
    if (rhi >= rlo) {
      Ball b = Ball::real_interval(rlo, rhi);
      if (b.radius() <= Rat::pow2(-static_cast<long>(p))) return b;
    }
    w *= 2;
    if (w > (1 << 26)) fail(errc::precision_failure, "mpfr enclosure did not converge");
  }
}

Ball const_enclose(unsigned p, int (*fn)(mpfr_t, mpfr_rnd_t)) {
  mpfr_prec_t w = std::max<mpfr_prec_t>(64, p + 16);
  for (;;) {
    mpfr_t lo, hi;
    mpfr_inits2(w, lo, hi, static_cast<mpfr_ptr>(nullptr));
    fn(lo, MPFR_RNDD);
    fn(hi, MPFR_RNDU);
    Rat rlo = mpfr_to_rat(lo), rhi = mpfr_to_rat(hi);
    mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr));
    Ball b = Ball::real_interval(rlo, rhi);
    if (b.radius() <= Rat::pow2(-static_cast<long>(p))) return b;
    w *= 2;
    if (w > (1 << 26)) fail(errc::precision_failure, "mpfr enclosure did not converge");
  }
}

int mpfr_e_const(mpfr_t out, mpfr_rnd_t rnd) {
  mpfr_t one;
  mpfr_init2(one, mpfr_get_prec(out));
  mpfr_set_ui(one, 1, MPFR_RNDN);
  int r = mpfr_exp(out, one, rnd);
  mpfr_clear(one);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// OracleSession

OracleSession::OracleSession(std::string command) : cmd_(std::move(command)) {}

OracleSession::~OracleSession() {
  if (out_fd_ >= 0) close(out_fd_);
  if (in_fd_ >= 0) close(in_fd_);
  if (pid_ > 0) {
    kill(static_cast<pid_t>(pid_), SIGTERM);
    int status = 0;
    waitpid(static_cast<pid_t>(pid_), &status, 0);
  }
}

void OracleSession::spawn() {
  int to_child[2], from_child[2];
  if (pipe(to_child) != 0 || pipe(from_child) != 0)
    fail(errc::oracle_failure, "cannot create oracle pipes");
  pid_t pid = fork();
  if (pid < 0) fail(errc::oracle_failure, "cannot fork oracle process");
  if (pid == 0) {
    dup2(to_child[0], STDIN_FILENO);
    dup2(from_child[1], STDOUT_FILENO);
    close(to_child[0]);
    close(to_child[1]);
    close(from_child[0]);
    close(from_child[1]);
    execl("/bin/sh", "sh", "-c", cmd_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(to_child[0]);
  close(from_child[1]);
  out_fd_ = to_child[1];
  in_fd_ = from_child[0];
  pid_ = pid;
}

std::string OracleSession::read_line() {
  for (;;) {
    size_t nl = buf_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buf_.substr(0, nl);
      buf_.erase(0, nl + 1);
      return line;
    }
    char chunk[512];
    ssize_t n = read(in_fd_, chunk, sizeof chunk);
    if (n <= 0) fail(errc::oracle_failure, "oracle closed the pipe");
    buf_.append(chunk, static_cast<size_t>(n));
  }
}

Ball OracleSession::refine(int index, unsigned p) {
  std::lock_guard<std::mutex> lock(mu_);
  if (pid_ < 0) spawn();
  std::string req = "REFINE " + std::to_string(index) + " " + std::to_string(p) + "\n";
  const char* data = req.c_str();
  size_t left = req.size();
  while (left > 0) {
    ssize_t n = write(out_fd_, data, left);
    if (n <= 0) fail(errc::oracle_failure, "oracle write failed");
    data += n;
    left -= static_cast<size_t>(n);
  }
  std::istringstream is(read_line());
  std::string tag, re, im, rad;
  is >> tag >> re >> im >> rad;
  if (tag != "BALL" || rad.empty()) fail(errc::oracle_failure, "malformed oracle reply");
  Rat rre = Rat::from_string(re), rim = Rat::from_string(im), rr = Rat::from_string(rad);
  if (rr.sign() < 0 || rr > Rat::pow2(-static_cast<long>(p)))
    fail(errc::oracle_failure, "oracle ball radius exceeds the precision contract");
  return Ball(GaussRat(rre, rim), rr, rim.is_zero());
}

// ---------------------------------------------------------------------------
// ComputableScalar

struct ComputableScalar::State {
  Kind kind = Kind::rational;
  GaussRat value;                          // rational kind
  Rat arg;                                 // log/exp argument
  std::shared_ptr<OracleSession> session;  // oracle kind
  int index = 0;
  std::map<unsigned, Ball> memo;
  std::mutex mu;
};

ComputableScalar ComputableScalar::rational(const GaussRat& v) {
  ComputableScalar c;
  c.st_ = std::make_shared<State>();
  c.st_->kind = Kind::rational;
  c.st_->value = v;
  return c;
}
ComputableScalar ComputableScalar::pi() {
  ComputableScalar c;
  c.st_ = std::make_shared<State>();
  c.st_->kind = Kind::pi;
  return c;
}
ComputableScalar ComputableScalar::euler() {
  ComputableScalar c;
  c.st_ = std::make_shared<State>();
  c.st_->kind = Kind::e;
  return c;
}
ComputableScalar ComputableScalar::log_of(const Rat& a) {
  if (a.sign() <= 0) fail(errc::validation_error, "log of nonpositive rational");
  ComputableScalar c;
  c.st_ = std::make_shared<State>();
  c.st_->kind = Kind::log_rat;
  c.st_->arg = a;
  return c;
}
ComputableScalar ComputableScalar::exp_of(const Rat& a) {
  ComputableScalar c;
  c.st_ = std::make_shared<State>();
  c.st_->kind = Kind::exp_rat;
  c.st_->arg = a;
  return c;
}
ComputableScalar ComputableScalar::oracle(std::shared_ptr<OracleSession> session, int index) {
  ComputableScalar c;
  c.st_ = std::make_shared<State>();
  c.st_->kind = Kind::oracle;
  c.st_->session = std::move(session);
  c.st_->index = index;
  return c;
}

ComputableScalar::Kind ComputableScalar::kind() const { return st_->kind; }
const GaussRat& ComputableScalar::rational_value() const { return st_->value; }
const Rat& ComputableScalar::argument() const { return st_->arg; }
int ComputableScalar::oracle_index() const { return st_->index; }
std::shared_ptr<OracleSession> ComputableScalar::oracle_session() const { return st_->session; }

bool ComputableScalar::is_real() const {
  switch (st_->kind) {
    case Kind::rational: return st_->value.is_real();
    case Kind::oracle: return false;  // unknown until refined; treated as complex
    default: return true;
  }
}

Ball ComputableScalar::refine(unsigned p) const {
  if (st_->kind == Kind::rational) return Ball::exact(st_->value);
  {
    std::lock_guard<std::mutex> lock(st_->mu);
    auto it = st_->memo.find(p);
    if (it != st_->memo.end()) return it->second;
  }
  Ball b = Ball::exact(GaussRat(Rat(0)));
  switch (st_->kind) {
    case Kind::pi:
      b = const_enclose(p, mpfr_const_pi);
      break;
    case Kind::e:
      b = const_enclose(p, mpfr_e_const);
      break;
    case Kind::log_rat:
      b = mpfr_enclose(st_->arg, p, [](mpfr_t out, mpfr_t in, mpfr_rnd_t rnd) { mpfr_log(out, in, rnd); });
      break;
    case Kind::exp_rat:
      b = mpfr_enclose(st_->arg, p, [](mpfr_t out, mpfr_t in, mpfr_rnd_t rnd) { mpfr_exp(out, in, rnd); });
      break;
    case Kind::oracle:
      b = st_->session->refine(st_->index, p);
      break;
    case Kind::rational:
      break;
  }
  std::lock_guard<std::mutex> lock(st_->mu);
  // consistency across precisions: any two enclosures of the value overlap
  for (const auto& [q, prev] : st_->memo)
    if (!b.overlaps(prev))
      fail(errc::oracle_failure, "inconsistent enclosures from scalar refinement");
  st_->memo.emplace(p, b);
  return b;
}

}  // namespace zeq
