#include "stable_meb/dataset_io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <sstream>
#include <string_view>

#include "stable_meb/errors.hpp"

namespace smeb {

namespace {

constexpr char kMagic[4] = {'M', 'E', 'B', 'D'};

void put_le(std::vector<unsigned char>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

std::uint64_t get_le(const unsigned char* p, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

std::vector<unsigned char> encode_dataset(const PointSet& points) {
  std::vector<unsigned char> out;
  out.reserve(kDatasetHeaderBytes + points.data().size() * 8);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_le(out, kDatasetVersion, 2);
  put_le(out, points.n(), 8);
  put_le(out, points.d(), 8);
  for (double x : points.data()) put_le(out, std::bit_cast<std::uint64_t>(x), 8);
  return out;
}

PointSet decode_dataset(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < kDatasetHeaderBytes || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw IoError("not an MEBD dataset (bad magic or truncated header)");
  }
  const auto version = get_le(bytes.data() + 4, 2);
  if (version != kDatasetVersion) {
    throw IoError("unsupported MEBD version " + std::to_string(version));
  }
  const std::uint64_t n = get_le(bytes.data() + 6, 8);
  const std::uint64_t d = get_le(bytes.data() + 14, 8);
  if (n == 0 || d == 0 || n > (bytes.size() / 8) || d > (bytes.size() / 8) ||
      n * d > (bytes.size() - kDatasetHeaderBytes) / 8 ||
      bytes.size() != kDatasetHeaderBytes + n * d * 8) {
    throw IoError("MEBD payload size does not match header n = " + std::to_string(n) +
                  ", d = " + std::to_string(d));
  }
  std::vector<double> data(n * d);
  const unsigned char* p = bytes.data() + kDatasetHeaderBytes;
  for (std::size_t k = 0; k < data.size(); ++k, p += 8) {
    data[k] = std::bit_cast<double>(get_le(p, 8));
  }
  try {
    return PointSet(n, d, std::move(data));
  } catch (const ContractViolation& e) {
    throw IoError(std::string("invalid dataset: ") + e.what());
  }
}

void write_dataset(const std::filesystem::path& path, const PointSet& points) {
  const auto bytes = encode_dataset(points);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

PointSet read_dataset(const std::filesystem::path& path) { return decode_dataset(slurp(path)); }

PointSet read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<double> data;
  std::size_t d = 0;
  std::size_t n = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t cols = 0;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      std::string_view field = rest.substr(0, comma);
      while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
      while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
        throw IoError(path.string() + ":" + std::to_string(line_no) + ": bad number '" +
                      std::string(field) + "'");
      }
      data.push_back(v);
      ++cols;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (d == 0) d = cols;
    if (cols != d) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                    std::to_string(d) + " columns, found " + std::to_string(cols));
    }
    ++n;
  }
  if (n == 0) throw IoError(path.string() + ": no points");
  try {
    return PointSet(n, d, std::move(data));
  } catch (const ContractViolation& e) {
    throw IoError(std::string("invalid dataset: ") + e.what());
  }
}

PointSet load_points(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char head[4] = {};
  in.read(head, 4);
  if (in.gcount() == 4 && std::memcmp(head, kMagic, 4) == 0) return read_dataset(path);
  return read_csv(path);
}

std::filesystem::path sidecar_path(const std::filesystem::path& dataset) {
  auto p = dataset;
  p += ".json";
  return p;
}

Sidecar read_sidecar(const std::filesystem::path& path) {
  Sidecar out;
  if (!std::filesystem::exists(path)) return out;
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    if (j.contains("spec") && !j["spec"].is_null()) {
      const auto& s = j["spec"];
      InstanceSpec spec;
      spec.family = parse_family(s.at("family").get<std::string>());
      spec.n = s.at("n").get<std::size_t>();
      spec.d = s.at("d").get<std::size_t>();
      spec.gamma = s.value("gamma", 0.0);
      spec.outlier_spread = s.value("outlier_spread", 10.0);
      spec.seed = s.at("seed").get<std::uint64_t>();
      out.spec = spec;
    }
    if (j.contains("inliers") && !j["inliers"].is_null()) {
      out.inliers = j["inliers"].get<std::vector<Index>>();
    }
    if (j.contains("reference_radius")) {
      out.reference_radius = j["reference_radius"].get<std::map<std::string, double>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed sidecar " + path.string() + ": " + e.what());
  }
  return out;
}

void write_sidecar(const std::filesystem::path& path, const Sidecar& sidecar) {
  nlohmann::json j;
  if (sidecar.spec) {
    const auto& s = *sidecar.spec;
    j["spec"] = {{"family", std::string(family_name(s.family))},
                 {"n", s.n},
                 {"d", s.d},
                 {"gamma", s.gamma},
                 {"outlier_spread", s.outlier_spread},
                 {"seed", s.seed}};
  } else {
    j["spec"] = nullptr;
  }
  j["inliers"] = sidecar.inliers ? nlohmann::json(*sidecar.inliers) : nlohmann::json(nullptr);
  j["reference_radius"] = sidecar.reference_radius;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace smeb
