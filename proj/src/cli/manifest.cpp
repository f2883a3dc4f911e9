#include "uavnav/cli/manifest.hpp"

#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <openssl/evp.h>

#include "uavnav/common.hpp"

namespace uavnav::cli {

namespace fs = std::filesystem;

namespace {

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string git_blob_hash(const std::string& bytes) {
  const std::string header = "blob " + std::to_string(bytes.size()) + '\0';
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha1(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), header.data(), header.size()) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw std::runtime_error("sha1 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return hex.str();
}

std::string git_blob_hash_file(const fs::path& path) { return git_blob_hash(read_all(path)); }

void RunManifest::add_input(const fs::path& path) {
  inputs.push_back({path.string(), git_blob_hash_file(path), fs::file_size(path)});
}

void RunManifest::add_artifact(const fs::path& out_dir, const std::string& relative) {
  const fs::path p = out_dir / relative;
  artifacts.push_back({relative, git_blob_hash_file(p), fs::file_size(p)});
}

namespace {

nlohmann::json records(const std::vector<FileRecord>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : v) a.push_back({{"path", r.path}, {"sha1", r.sha1}, {"bytes", r.bytes}});
  return a;
}

std::vector<FileRecord> parse_records(const nlohmann::json& a) {
  std::vector<FileRecord> v;
  for (const auto& r : a) {
    v.push_back({r.at("path").get<std::string>(), r.at("sha1").get<std::string>(),
                 r.at("bytes").get<std::uintmax_t>()});
  }
  return v;
}

}  // namespace

nlohmann::json RunManifest::to_json() const {
  return {{"schema", kManifestSchema},
          {"command", command},
          {"options", options},
          {"master_seed", master_seed},
          {"seed_rule", seed_rule},
          {"inputs", records(inputs)},
          {"artifacts", records(artifacts)},
          {"timings_seconds", timings},
          {"exit_code", exit_code}};
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  if (j.value("schema", std::string{}) != kManifestSchema) {
    throw ConfigError(std::string("manifest.schema: expected '") + kManifestSchema + "'");
  }
  RunManifest m;
  try {
    m.command = j.at("command").get<std::string>();
    m.options = j.at("options");
    m.master_seed = j.at("master_seed").get<std::uint64_t>();
    m.seed_rule = j.value("seed_rule", std::string{});
    m.inputs = parse_records(j.at("inputs"));
    m.artifacts = parse_records(j.at("artifacts"));
    m.timings = j.value("timings_seconds", std::map<std::string, double>{});
    m.exit_code = j.value("exit_code", 0);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("manifest: ") + e.what());
  }
  return m;
}

void write_manifest(const RunManifest& m, const fs::path& out_dir) {
  const fs::path p = out_dir / kManifestFile;
  std::ofstream out(p);
  if (!out) throw IoError("cannot write " + p.string());
  out << m.to_json().dump(2) << '\n';
  if (!out) throw IoError("failed writing " + p.string());
}

RunManifest read_manifest(const fs::path& path) {
  const std::string text = read_all(path);
  try {
    return RunManifest::from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("manifest " + path.string() + ": " + e.what());
  }
}

std::vector<std::string> verify_manifest(const RunManifest& m, const fs::path& out_dir) {
  std::vector<std::string> bad;
  for (const auto& a : m.artifacts) {
    const fs::path p = out_dir / a.path;
    if (!fs::exists(p) || git_blob_hash_file(p) != a.sha1) bad.push_back(a.path);
  }
  return bad;
}

}  // namespace uavnav::cli
