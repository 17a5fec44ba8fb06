#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>

#include <json.hpp>

#include "pathlab/envs/environment.hpp"

namespace pathlab::cli {

nlohmann::json breakdown_json(const RewardBreakdown& b);
nlohmann::json step_json(const StepResult& r);

/// One line-delimited JSON session around a single environment.
///
/// Requests: make {env, config}, reset {seed}, step {action: [6 floats]},
/// close. Every request line yields exactly one response line; failures
/// produce {"error": "..."} and leave the session usable.
class ProtocolSession {
 public:
  ProtocolSession() = default;
  /// Starts with an environment already made (used by `serve --env`).
  ProtocolSession(EnvKind kind, const EnvConfig& cfg, int frame_skip = 1);

  std::string handle(const std::string& line);
  bool closed() const { return closed_; }

 private:
  nlohmann::json dispatch(const nlohmann::json& request);

  std::unique_ptr<PathPlanningEnv> env_;
  int frame_skip_ = 1;
  bool closed_ = false;
};

/// Serves one session over a pair of streams until close or end of input.
void serve_stream(ProtocolSession& session, std::istream& in, std::ostream& out);

/// Listens on 127.0.0.1:port and serves sessions one connection at a time.
/// `make_session` builds a fresh session per connection. Returns after the
/// first connection when `once` is set.
void serve_tcp(int port, bool once, const std::function<ProtocolSession()>& make_session,
               std::ostream* log = nullptr);

}  // namespace pathlab::cli
