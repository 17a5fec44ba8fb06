#include "pathlab/cli/protocol.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <functional>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "pathlab/cli/run_config.hpp"

namespace pathlab::cli {

using nlohmann::json;

json breakdown_json(const RewardBreakdown& b) {
  return {{"r_d", b.r_d},       {"r_theta", b.r_theta}, {"r_t", b.r_t},
          {"r_obst", b.r_obst}, {"r_hit", b.r_hit},     {"total", b.total}};
}

json step_json(const StepResult& r) {
  std::vector<double> obs(r.observation.data(), r.observation.data() + r.observation.size());
  return {{"obs", obs},
          {"reward", r.reward},
          {"terminated", r.terminated},
          {"truncated", r.truncated},
          {"breakdown", breakdown_json(r.breakdown)}};
}

ProtocolSession::ProtocolSession(EnvKind kind, const EnvConfig& cfg, int frame_skip)
    : env_(make_env(kind, cfg)), frame_skip_(frame_skip) {
  if (frame_skip < 1) throw std::invalid_argument("frame_skip must be >= 1");
}

std::string ProtocolSession::handle(const std::string& line) {
  json response;
  const json request = json::parse(line, nullptr, false);
  if (request.is_discarded() || !request.is_object()) {
    response = {{"error", "malformed JSON request"}};
  } else {
    try {
      response = dispatch(request);
    } catch (const std::exception& e) {
      response = {{"error", e.what()}};
    }
  }
  return response.dump();
}

json ProtocolSession::dispatch(const json& request) {
  if (closed_) return {{"error", "session closed"}};
  if (!request.contains("cmd") || !request["cmd"].is_string()) return {{"error", "request needs a string 'cmd'"}};
  const std::string cmd = request["cmd"].get<std::string>();

  if (cmd == "make") {
    if (!request.contains("env") || !request["env"].is_string()) return {{"error", "make needs a string 'env'"}};
    const EnvKind kind = parse_env_kind(request["env"].get<std::string>());
    EnvConfig cfg;
    int skip = 1;
    if (request.contains("config")) {
      json overrides = request["config"];
      if (!overrides.is_object()) return {{"error", "config must be an object"}};
      if (overrides.contains("frame_skip")) {
        skip = overrides["frame_skip"].get<int>();
        overrides.erase("frame_skip");
        if (skip < 1) return {{"error", "frame_skip must be >= 1"}};
      }
      update_env_config(cfg, overrides);
    }
    env_ = make_env(kind, cfg);
    frame_skip_ = skip;
    return {{"ok", true},
            {"env", std::string(to_string(kind))},
            {"obs_dim", env_->observation_dim()},
            {"action_dim", env_->action_dim()}};
  }
  if (cmd == "close") {
    closed_ = true;
    env_.reset();
    return {{"ok", true}};
  }
  if (!env_) return {{"error", "no environment: send make first"}};

  if (cmd == "reset") {
    if (!request.contains("seed") || !request["seed"].is_number_integer())
      return {{"error", "reset needs an integer 'seed'"}};
    StepResult r;
    r.observation = env_->reset(request["seed"].get<std::uint64_t>());
    return step_json(r);
  }
  if (cmd == "step") {
    if (!request.contains("action") || !request["action"].is_array() || request["action"].size() != kActionDim)
      return {{"error", "step needs an 'action' array of 6 numbers"}};
    ActionVector a;
    for (int i = 0; i < kActionDim; ++i) {
      if (!request["action"][i].is_number()) return {{"error", "action entries must be numbers"}};
      a[i] = request["action"][i].get<double>();
    }
    return step_json(frame_skip(*env_, SubGoalAction(a), frame_skip_));
  }
  return {{"error", "unknown cmd '" + cmd + "'"}};
}

void serve_stream(ProtocolSession& session, std::istream& in, std::ostream& out) {
  std::string line;
  while (!session.closed() && std::getline(in, line)) {
    if (line.empty()) continue;
    out << session.handle(line) << '\n' << std::flush;
  }
}

namespace {

class Fd {
 public:
  explicit Fd(int fd) : fd_(fd) {}
  ~Fd() {
    if (fd_ >= 0) ::close(fd_);
  }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  int get() const { return fd_; }

 private:
  int fd_;
};

bool send_all(int fd, const std::string& data) {
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n <= 0) return false;
    sent += static_cast<std::size_t>(n);
  }
  return true;
}

void serve_connection(int fd, ProtocolSession& session) {
  std::string pending;
  char buf[4096];
  while (!session.closed()) {
    const ssize_t n = ::recv(fd, buf, sizeof(buf), 0);
    if (n <= 0) return;
    pending.append(buf, static_cast<std::size_t>(n));
    for (std::size_t pos; !session.closed() && (pos = pending.find('\n')) != std::string::npos;) {
      std::string line = pending.substr(0, pos);
      pending.erase(0, pos + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (!send_all(fd, session.handle(line) + "\n")) return;
    }
  }
}

}  // namespace

void serve_tcp(int port, bool once, const std::function<ProtocolSession()>& make_session, std::ostream* log) {
  Fd listener(::socket(AF_INET, SOCK_STREAM, 0));
  if (listener.get() < 0) throw std::runtime_error(std::string("socket: ") + std::strerror(errno));
  const int yes = 1;
  ::setsockopt(listener.get(), SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  if (::bind(listener.get(), reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0)
    throw std::runtime_error(std::string("bind: ") + std::strerror(errno));
  if (::listen(listener.get(), 1) < 0) throw std::runtime_error(std::string("listen: ") + std::strerror(errno));
  if (log) *log << "listening on 127.0.0.1:" << port << std::endl;

  do {
    Fd conn(::accept(listener.get(), nullptr, nullptr));
    if (conn.get() < 0) throw std::runtime_error(std::string("accept: ") + std::strerror(errno));
    ProtocolSession session = make_session();
    serve_connection(conn.get(), session);
  } while (!once);
}

}  // namespace pathlab::cli
