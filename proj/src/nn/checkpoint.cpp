#include "uavnav/nn/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace uavnav::nn {

static_assert(std::endian::native == std::endian::little, "checkpoint codec assumes little-endian hosts");

namespace {

constexpr char kMagic[8] = {'U', 'A', 'V', 'N', 'A', 'V', 'C', 'K'};

class Writer {
 public:
  template <typename T>
  void put(T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out_.append(buf, sizeof(T));
  }
  void raw(const char* p, std::size_t n) { out_.append(p, n); }
  void doubles(const double* p, Eigen::Index n) {
    raw(reinterpret_cast<const char*>(p), static_cast<std::size_t>(n) * sizeof(double));
  }
  std::string& bytes() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  Reader(const std::string& s, std::size_t end, std::uint32_t version) : s_(s), end_(end), version_(version) {}
  void set_version(std::uint32_t v) { version_ = v; }
  template <typename T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, s_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  void doubles(double* p, Eigen::Index n) {
    const std::size_t bytes = static_cast<std::size_t>(n) * sizeof(double);
    need(bytes);
    std::memcpy(p, s_.data() + pos_, bytes);
    pos_ += bytes;
  }
  std::size_t pos() const { return pos_; }
  [[noreturn]] void fail(const std::string& what) const { throw CheckpointError(what, version_); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > end_) fail("checkpoint truncated");
  }
  const std::string& s_;
  std::size_t pos_ = 0;
  std::size_t end_;
  std::uint32_t version_;
};

std::uint64_t fnv1a(const char* p, std::size_t n) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= static_cast<unsigned char>(p[i]);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::string serialize_checkpoint(const DuelingNet& net, const OptimizerState& opt) {
  Writer w;
  w.raw(kMagic, sizeof kMagic);
  w.put<std::uint32_t>(kCheckpointVersion);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(net.trunk_size()));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(net.value_size()));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(net.advantage_size()));
  for (const auto& l : net.layers()) {
    w.put<std::uint32_t>(static_cast<std::uint32_t>(l.in()));
    w.put<std::uint32_t>(static_cast<std::uint32_t>(l.out()));
    w.put<std::uint8_t>(static_cast<std::uint8_t>(l.activation));
  }
  for (const auto& l : net.layers()) {
    w.doubles(l.weight.data(), l.weight.size());
    w.doubles(l.bias.data(), l.bias.size());
  }
  w.put<double>(opt.params.lr);
  w.put<double>(opt.params.beta1);
  w.put<double>(opt.params.beta2);
  w.put<double>(opt.params.eps);
  w.put<std::uint64_t>(opt.step);
  const bool has_moments = opt.m_weight.size() == net.layers().size();
  w.put<std::uint8_t>(has_moments ? 1 : 0);
  if (has_moments) {
    for (std::size_t k = 0; k < opt.m_weight.size(); ++k) {
      w.doubles(opt.m_weight[k].data(), opt.m_weight[k].size());
      w.doubles(opt.v_weight[k].data(), opt.v_weight[k].size());
      w.doubles(opt.m_bias[k].data(), opt.m_bias[k].size());
      w.doubles(opt.v_bias[k].data(), opt.v_bias[k].size());
    }
  }
  const std::uint64_t sum = fnv1a(w.bytes().data(), w.bytes().size());
  w.put<std::uint64_t>(sum);
  return std::move(w.bytes());
}

Checkpoint deserialize_checkpoint(const std::string& bytes, int expected_actions) {
  if (bytes.size() < sizeof kMagic + sizeof(std::uint32_t) + sizeof(std::uint64_t) ||
      std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw CheckpointError("not a checkpoint file", 0);
  }
  std::uint32_t version = 0;
  std::memcpy(&version, bytes.data() + sizeof kMagic, sizeof version);
  if (version != kCheckpointVersion) {
    throw CheckpointError("unsupported checkpoint version, expected v" + std::to_string(kCheckpointVersion),
                          version);
  }
  const std::size_t body = bytes.size() - sizeof(std::uint64_t);
  std::uint64_t stored = 0;
  std::memcpy(&stored, bytes.data() + body, sizeof stored);
  if (fnv1a(bytes.data(), body) != stored) throw CheckpointError("checksum mismatch", version);

  Reader r(bytes, body, version);
  for (std::size_t i = 0; i < sizeof kMagic; ++i) r.get<char>();
  r.get<std::uint32_t>();
  const std::uint32_t n_sections[3] = {r.get<std::uint32_t>(), r.get<std::uint32_t>(), r.get<std::uint32_t>()};
  const std::uint64_t n_layers = std::uint64_t{n_sections[0]} + n_sections[1] + n_sections[2];
  if (n_layers == 0 || n_layers > 1024) r.fail("implausible layer count");
  std::vector<DenseLayer> layers(n_layers);
  for (auto& l : layers) {
    const auto in = r.get<std::uint32_t>();
    const auto out = r.get<std::uint32_t>();
    const auto act = r.get<std::uint8_t>();
    if (in == 0 || out == 0 || in > (1u << 20) || out > (1u << 20) || act > 1) r.fail("invalid layer header");
    l.weight.resize(out, in);
    l.bias.resize(out);
    l.activation = static_cast<Activation>(act);
  }
  for (auto& l : layers) {
    r.doubles(l.weight.data(), l.weight.size());
    r.doubles(l.bias.data(), l.bias.size());
  }
  std::vector<DenseLayer> sections[3];
  std::size_t k = 0;
  for (int s = 0; s < 3; ++s)
    for (std::uint32_t i = 0; i < n_sections[s]; ++i) sections[s].push_back(std::move(layers[k++]));

  Checkpoint ck;
  try {
    ck.net = DuelingNet(std::move(sections[0]), std::move(sections[1]), std::move(sections[2]));
  } catch (const ContractViolation& e) {
    r.fail(std::string("inconsistent topology: ") + e.what());
  }
  if (expected_actions > 0 && ck.net.num_actions() != expected_actions) {
    r.fail("checkpoint has " + std::to_string(ck.net.num_actions()) + " actions, expected " +
           std::to_string(expected_actions));
  }
  ck.optimizer.params.lr = r.get<double>();
  ck.optimizer.params.beta1 = r.get<double>();
  ck.optimizer.params.beta2 = r.get<double>();
  ck.optimizer.params.eps = r.get<double>();
  ck.optimizer.step = r.get<std::uint64_t>();
  const auto has_moments = r.get<std::uint8_t>();
  if (has_moments > 1) r.fail("invalid optimizer flag");
  if (has_moments == 1) {
    OptimizerState shaped = OptimizerState::for_net(ck.net, ck.optimizer.params);
    shaped.step = ck.optimizer.step;
    for (std::size_t i = 0; i < shaped.m_weight.size(); ++i) {
      r.doubles(shaped.m_weight[i].data(), shaped.m_weight[i].size());
      r.doubles(shaped.v_weight[i].data(), shaped.v_weight[i].size());
      r.doubles(shaped.m_bias[i].data(), shaped.m_bias[i].size());
      r.doubles(shaped.v_bias[i].data(), shaped.v_bias[i].size());
    }
    ck.optimizer = std::move(shaped);
  }
  if (r.pos() != body) r.fail("trailing bytes after payload");
  return ck;
}

void save_checkpoint(const DuelingNet& net, const OptimizerState& opt, const std::filesystem::path& path) {
  const std::string bytes = serialize_checkpoint(net, opt);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move checkpoint into place at " + path.string());
  }
}

Checkpoint load_checkpoint(const std::filesystem::path& path, int expected_actions) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open " + path.string(), 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_checkpoint(ss.str(), expected_actions);
}

}  // namespace uavnav::nn
