#pragma once

// Checkpoint container, little-endian host layout:
//
//   magic        8 bytes  "PLABCKPT"
//   version      u32      kCheckpointVersion
//   scalar_bytes u32      sizeof(Scalar) of the networks
//   obs_dim      u32
//   config       u64 length + UTF-8 JSON (SacConfig)
//   networks     actor, q1, q2, q1_target, q2_target; each is
//                u32 layer count, then per layer u32 rows, u32 cols,
//                rows*cols weights (column-major) and rows biases
//   optimizers   actor, q1, q2; each u64 step count + first and second
//                moments laid out like a network (without the layer header)
//   entropy      f64 log_alpha, f64 m, f64 v, u64 t
//   updates      u64
//   rng          u64 length + engine state text
//   checksum     u64 FNV-1a over every preceding byte

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathlab/agent/config_json.hpp"
#include "pathlab/agent/sac.hpp"

namespace pathlab::agent {

inline constexpr std::uint32_t kCheckpointVersion = 1;
inline constexpr char kCheckpointMagic[8] = {'P', 'L', 'A', 'B', 'C', 'K', 'P', 'T'};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& bytes, std::size_t n) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= static_cast<unsigned char>(bytes[i]);
    h *= 1099511628211ULL;
  }
  return h;
}

class Writer {
 public:
  template <typename T>
  void put(const T& v) {
    const char* p = reinterpret_cast<const char*>(&v);
    buf_.append(p, sizeof(T));
  }
  void put_string(const std::string& s) {
    put<std::uint64_t>(s.size());
    buf_.append(s);
  }
  template <typename Derived>
  void put_dense(const Eigen::DenseBase<Derived>& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      for (Eigen::Index r = 0; r < m.rows(); ++r) put(m(r, c));
  }
  std::string& bytes() { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(const std::string& bytes, std::size_t end) : buf_(bytes), end_(end) {}

  template <typename T>
  T get() {
    if (pos_ + sizeof(T) > end_) throw CheckpointError("corrupt checkpoint: unexpected end of data");
    T v;
    std::memcpy(&v, buf_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::string get_string() {
    const auto n = get<std::uint64_t>();
    if (n > end_ - pos_) throw CheckpointError("corrupt checkpoint: string exceeds file");
    std::string s = buf_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  template <typename Derived>
  void get_dense(Eigen::DenseBase<Derived>& m) {
    using T = typename Derived::Scalar;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = get<T>();
  }
  bool at_end() const { return pos_ == end_; }

 private:
  const std::string& buf_;
  std::size_t end_;
  std::size_t pos_ = 0;
};

template <typename Scalar>
void write_net(Writer& w, const Mlp<Scalar>& net) {
  w.put<std::uint32_t>(static_cast<std::uint32_t>(net.depth()));
  for (const auto& l : net.layers()) {
    w.put<std::uint32_t>(static_cast<std::uint32_t>(l.weight.rows()));
    w.put<std::uint32_t>(static_cast<std::uint32_t>(l.weight.cols()));
    w.put_dense(l.weight);
    w.put_dense(l.bias);
  }
}

template <typename Scalar>
void read_net(Reader& r, Mlp<Scalar>& net) {
  const auto depth = r.get<std::uint32_t>();
  if (depth != net.depth()) throw CheckpointError("checkpoint network depth does not match its config");
  for (auto& l : net.layers()) {
    const auto rows = r.get<std::uint32_t>();
    const auto cols = r.get<std::uint32_t>();
    if (rows != l.weight.rows() || cols != l.weight.cols())
      throw CheckpointError("checkpoint layer shape does not match its config");
    r.get_dense(l.weight);
    r.get_dense(l.bias);
  }
}

template <typename Scalar>
void write_stack(Writer& w, const LayerStack<Scalar>& s) {
  for (const auto& l : s) {
    w.put_dense(l.weight);
    w.put_dense(l.bias);
  }
}

template <typename Scalar>
void read_stack(Reader& r, LayerStack<Scalar>& s) {
  for (auto& l : s) {
    r.get_dense(l.weight);
    r.get_dense(l.bias);
  }
}

template <typename Scalar>
void write_adam(Writer& w, const Adam<Scalar>& a) {
  w.put<std::uint64_t>(a.steps());
  write_stack(w, a.first_moment());
  write_stack(w, a.second_moment());
}

template <typename Scalar>
void read_adam(Reader& r, Adam<Scalar>& a) {
  a.set_steps(r.get<std::uint64_t>());
  read_stack(r, a.first_moment());
  read_stack(r, a.second_moment());
}

}  // namespace detail

template <typename Scalar>
void save_checkpoint(const SacAgent<Scalar>& agent, const std::string& path) {
  detail::Writer w;
  w.bytes().append(kCheckpointMagic, sizeof(kCheckpointMagic));
  w.put<std::uint32_t>(kCheckpointVersion);
  w.put<std::uint32_t>(sizeof(Scalar));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(agent.obs_dim()));
  w.put_string(nlohmann::json(agent.config()).dump());
  detail::write_net(w, agent.actor());
  detail::write_net(w, agent.q1());
  detail::write_net(w, agent.q2());
  detail::write_net(w, agent.q1_target());
  detail::write_net(w, agent.q2_target());
  detail::write_adam(w, agent.actor_optimizer());
  detail::write_adam(w, agent.q1_optimizer());
  detail::write_adam(w, agent.q2_optimizer());
  w.put<double>(agent.log_alpha());
  w.put<double>(agent.alpha_optimizer().m);
  w.put<double>(agent.alpha_optimizer().v);
  w.put<std::uint64_t>(agent.alpha_optimizer().t);
  w.put<std::uint64_t>(agent.updates());
  w.put_string(agent.rng().state());
  const std::uint64_t sum = detail::fnv1a(w.bytes(), w.bytes().size());
  w.put<std::uint64_t>(sum);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CheckpointError("cannot open checkpoint for writing: " + path);
  out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
  if (!out) throw CheckpointError("failed writing checkpoint: " + path);
}

/// Reads only the header fields needed to build a compatible agent.
struct CheckpointHeader {
  std::uint32_t version = 0;
  std::uint32_t scalar_bytes = 0;
  int obs_dim = 0;
  SacConfig config;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("checkpoint not found: " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline CheckpointHeader read_header(Reader& r) {
  char magic[8];
  for (char& c : magic) c = r.get<char>();
  if (std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0)
    throw CheckpointError("corrupt checkpoint: bad magic");
  CheckpointHeader h;
  h.version = r.get<std::uint32_t>();
  if (h.version != kCheckpointVersion)
    throw CheckpointError("checkpoint version " + std::to_string(h.version) + " unsupported (expected " +
                          std::to_string(kCheckpointVersion) + ")");
  h.scalar_bytes = r.get<std::uint32_t>();
  h.obs_dim = static_cast<int>(r.get<std::uint32_t>());
  try {
    h.config = nlohmann::json::parse(r.get_string()).get<SacConfig>();
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(std::string("corrupt checkpoint config: ") + e.what());
  }
  return h;
}

// Verifies the trailing checksum and returns the payload length.
inline std::size_t verified_payload(const std::string& bytes) {
  if (bytes.size() < sizeof(kCheckpointMagic) + sizeof(std::uint64_t))
    throw CheckpointError("corrupt checkpoint: file too short");
  const std::size_t end = bytes.size() - sizeof(std::uint64_t);
  std::uint64_t stored;
  std::memcpy(&stored, bytes.data() + end, sizeof(stored));
  if (std::memcmp(bytes.data(), kCheckpointMagic, sizeof(kCheckpointMagic)) != 0)
    throw CheckpointError("corrupt checkpoint: bad magic");
  if (stored != fnv1a(bytes, end)) throw CheckpointError("corrupt checkpoint: checksum mismatch");
  return end;
}

}  // namespace detail

inline CheckpointHeader read_checkpoint_header(const std::string& path) {
  const std::string bytes = detail::read_file(path);
  detail::Reader r(bytes, detail::verified_payload(bytes));
  return detail::read_header(r);
}

template <typename Scalar>
SacAgent<Scalar> load_checkpoint(const std::string& path) {
  const std::string bytes = detail::read_file(path);
  detail::Reader r(bytes, detail::verified_payload(bytes));
  const CheckpointHeader h = detail::read_header(r);
  if (h.scalar_bytes != sizeof(Scalar))
    throw CheckpointError("checkpoint scalar width " + std::to_string(h.scalar_bytes) + " does not match " +
                          std::to_string(sizeof(Scalar)));
  SacAgent<Scalar> agent(h.obs_dim, h.config);
  detail::read_net(r, agent.actor());
  detail::read_net(r, agent.q1());
  detail::read_net(r, agent.q2());
  detail::read_net(r, agent.q1_target());
  detail::read_net(r, agent.q2_target());
  detail::read_adam(r, agent.actor_optimizer());
  detail::read_adam(r, agent.q1_optimizer());
  detail::read_adam(r, agent.q2_optimizer());
  agent.log_alpha() = r.get<double>();
  agent.alpha_optimizer().m = r.get<double>();
  agent.alpha_optimizer().v = r.get<double>();
  agent.alpha_optimizer().t = r.get<std::uint64_t>();
  agent.set_updates(r.get<std::uint64_t>());
  agent.rng().set_state(r.get_string());
  if (!r.at_end()) throw CheckpointError("corrupt checkpoint: trailing data");
  return agent;
}

}  // namespace pathlab::agent
