#include "cache.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>
#include <unistd.h>

#include <json.hpp>

namespace rsc::cli {

namespace fs = std::filesystem;

DiskCache::DiskCache(fs::path dir, std::size_t min_nonzeros) : dir_(std::move(dir)), min_nonzeros_(min_nonzeros) {
  fs::create_directories(dir_);
}

std::string DiskCache::key(const SparseMatrix& m) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::string buf = std::string(kAlgorithm) + "\n" + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  auto flush = [&] {
    EVP_DigestUpdate(ctx.get(), buf.data(), buf.size());
    buf.clear();
  };
  for (int c = 0; c < m.cols(); ++c) {
    for (const auto& [row, v] : m.column(c)) {
      buf += std::to_string(row);
      buf += ':';
      buf += std::to_string(v);
      buf += ' ';
    }
    buf += '\n';
    if (buf.size() > (1 << 16)) flush();
  }
  flush();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::optional<SparseInvariants> DiskCache::get(const SparseMatrix& m) {
  if (m.nonzeros() < min_nonzeros_) return std::nullopt;
  std::ifstream in(dir_ / (key(m) + ".json"));
  if (!in) return std::nullopt;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("algorithm") != kAlgorithm || j.at("rows") != m.rows() || j.at("cols") != m.cols()) return std::nullopt;
    SparseInvariants inv;
    inv.rank = j.at("rank").get<int>();
    for (const auto& d : j.at("nonunit")) inv.nonunit.emplace_back(d.get<std::string>());
    return inv;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entries are recomputed and overwritten
  }
}

void DiskCache::put(const SparseMatrix& m, const SparseInvariants& inv) {
  if (m.nonzeros() < min_nonzeros_) return;
  nlohmann::json j{{"algorithm", kAlgorithm}, {"rows", m.rows()}, {"cols", m.cols()}, {"rank", inv.rank}};
  j["nonunit"] = nlohmann::json::array();
  for (const auto& d : inv.nonunit) j["nonunit"].push_back(d.get_str());
  static std::atomic<long> counter{0};
  std::ostringstream tmp_name;
  tmp_name << ".tmp-" << ::getpid() << "-" << std::this_thread::get_id() << "-" << counter++;
  fs::path tmp = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp);
    out << j.dump() << "\n";
    if (!out) return;
  }
  std::error_code ec;
  fs::rename(tmp, dir_ / (key(m) + ".json"), ec);
  if (ec) fs::remove(tmp, ec);
}

fs::path default_cache_dir() {
  if (const char* d = std::getenv("RSC_CACHE_DIR"); d && *d) return d;
  if (const char* d = std::getenv("XDG_CACHE_HOME"); d && *d) return fs::path(d) / "rsc";
  if (const char* d = std::getenv("HOME"); d && *d) return fs::path(d) / ".cache" / "rsc";
  return {};
}

}  // namespace rsc::cli
