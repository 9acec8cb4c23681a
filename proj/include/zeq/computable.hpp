#ifndef ZEQ_COMPUTABLE_HPP
#define ZEQ_COMPUTABLE_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "zeq/ball.hpp"

namespace zeq {

/// Subprocess speaking the oracle line protocol:
///   request  "REFINE <index> <p>\n"
///   response "BALL <center_re> <center_im> <radius>\n"   (exact rationals a/b)
class OracleSession {
 public:
  explicit OracleSession(std::string command);
  ~OracleSession();
  OracleSession(const OracleSession&) = delete;
  OracleSession& operator=(const OracleSession&) = delete;

  Ball refine(int index, unsigned p);
  const std::string& command() const { return cmd_; }

 private:
  void spawn();
  std::string read_line();

  std::string cmd_;
  int in_fd_ = -1;   // child's stdout (we read)
  int out_fd_ = -1;  // child's stdin (we write)
  long pid_ = -1;
  std::string buf_;
  std::mutex mu_;
};

/// A computable number: a refinable stream of shrinking balls.  refine(p)
/// returns an enclosure of radius <= 2^-p and is deterministic in p (results
/// are memoized per precision, never coarsened or history-dependent).
class ComputableScalar {
 public:
  enum class Kind { rational, pi, e, log_rat, exp_rat, oracle };

  static ComputableScalar rational(const GaussRat& v);
  static ComputableScalar pi();
  static ComputableScalar euler();
  static ComputableScalar log_of(const Rat& a);   // requires a > 0
  static ComputableScalar exp_of(const Rat& a);
  static ComputableScalar oracle(std::shared_ptr<OracleSession> session, int index);

  Kind kind() const;
  bool is_rational() const { return kind() == Kind::rational; }
  const GaussRat& rational_value() const;
  const Rat& argument() const;  // log/exp argument
  int oracle_index() const;
  std::shared_ptr<OracleSession> oracle_session() const;

  /// Enclosure of radius <= 2^-p.
  Ball refine(unsigned p) const;

  /// True when the represented value is real by construction.
  bool is_real() const;

 private:
  struct State;
  std::shared_ptr<State> st_;
};

}  // namespace zeq

#endif
