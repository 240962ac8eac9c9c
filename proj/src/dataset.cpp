#include "polarbench/dataset.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <set>
#include <sstream>

namespace polarbench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DatasetError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Write-then-rename so an interrupted run never leaves a half-written file.
void write_file(const fs::path& p, std::string_view bytes) {
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DatasetError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DatasetError("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  if (ec) throw DatasetError("cannot move " + tmp.string() + " to " + p.string() + ": " + ec.message());
}

std::string image_rel(const Instance& inst) { return "images/" + inst.id + ".svg"; }

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

json manifest_record(const Instance& inst) {
  const auto& task = find_task(inst.task_id);
  json r;
  r["id"] = inst.id;
  r["task_id"] = inst.task_id;
  r["category"] = task.category;
  r["subcategory"] = task.subcategory;
  r["topology"] = std::string(to_string(inst.topology));
  r["boundary"] = std::string(to_string(inst.boundary));
  r["alignment"] = inst.meta.value("alignment", std::string(to_string(task.alignment)));
  r["answer_type"] = std::string(to_string(task.answer_type));
  r["seed"] = inst.seed;
  r["question"] = inst.question;
  if (!inst.options.empty()) r["options"] = inst.options;
  r["ground_truth"] = to_json(inst.ground_truth);
  r["image_path"] = image_rel(inst);
  r["image_sha256"] = sha256_hex(inst.svg);
  r["grid"] = {{"major", inst.grid.major}, {"minor", inst.grid.minor}};
  r["generator_version"] = inst.meta.value("generator_version", std::string(kGeneratorVersion));
  r["puzzle"] = inst.puzzle;
  r["meta"] = inst.meta;
  return r;
}

fs::path write_dataset(const Dataset& ds, const fs::path& out_dir) { return write_dataset(ds.instances(), out_dir); }

fs::path write_dataset(const std::vector<const Instance*>& instances, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir / "images", ec);
  if (ec) throw DatasetError("cannot create " + (out_dir / "images").string() + ": " + ec.message());

  std::set<std::string> ids;
  std::string manifest;
  for (const auto* inst : instances) {
    if (!ids.insert(inst->id).second) throw DatasetError("duplicate instance id " + inst->id);
    manifest += manifest_record(*inst).dump() + "\n";
    write_file(out_dir / image_rel(*inst), inst->svg);
  }
  // Images left over from an earlier, different run would make the tree depend
  // on history.
  for (const auto& e : fs::directory_iterator(out_dir / "images")) {
    const auto ext = e.path().extension();
    if ((ext == ".svg" && !ids.count(e.path().stem().string())) || ext == ".tmp") fs::remove(e.path());
  }
  const auto path = out_dir / "manifest.jsonl";
  write_file(path, manifest);
  return path;
}

Instance instance_from_record(const json& rec, std::string svg) {
  Instance inst;
  inst.id = rec.at("id").get<std::string>();
  inst.task_id = rec.at("task_id").get<std::string>();
  inst.topology = topology_from_string(rec.at("topology").get<std::string>());
  inst.boundary = boundary_from_string(rec.at("boundary").get<std::string>());
  inst.seed = rec.at("seed").get<uint64_t>();
  inst.meta = rec.value("meta", json::object());
  inst.grid = GridSpec{inst.topology, rec.at("grid").at("major").get<int>(), rec.at("grid").at("minor").get<int>(),
                       inst.boundary, inst.meta.value("inner_radius_ratio", GridSpec{}.inner_radius_ratio)};
  inst.narrative = inst.meta.value("narrative", std::string());
  inst.question = rec.at("question").get<std::string>();
  if (rec.contains("options")) inst.options = rec.at("options").get<std::vector<std::string>>();
  inst.ground_truth = answer_from_json(rec.at("ground_truth"));
  inst.puzzle = rec.value("puzzle", json::object());
  inst.svg = std::move(svg);
  return inst;
}

std::vector<ManifestEntry> read_manifest(const fs::path& dir) {
  const auto path = dir / "manifest.jsonl";
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot read " + path.string());
  std::vector<ManifestEntry> out;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(n);
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw DatasetError(where + ": " + e.what());
    }
    ManifestEntry e;
    try {
      e.image_path = dir / rec.at("image_path").get<std::string>();
      e.image_sha256 = rec.value("image_sha256", std::string());
      std::string svg;
      if (!fs::exists(e.image_path)) {
        e.image_problem = "missing image " + e.image_path.string();
      } else {
        svg = read_file(e.image_path);
        if (!e.image_sha256.empty() && sha256_hex(svg) != e.image_sha256) {
          e.image_problem = "image " + e.image_path.string() + " does not match its recorded digest";
        }
      }
      e.instance = instance_from_record(rec, std::move(svg));
    } catch (const DatasetError&) {
      throw;
    } catch (const std::exception& ex) {
      throw DatasetError(where + ": " + ex.what());
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Instance> read_dataset(const fs::path& dir) {
  std::vector<Instance> out;
  for (auto& e : read_manifest(dir)) {
    if (!e.image_problem.empty()) throw DatasetError(e.image_problem);
    out.push_back(std::move(e.instance));
  }
  return out;
}

size_t answer_domain_size(const TaskSpec& task, const Instance& inst) {
  if (!inst.options.empty()) return inst.options.size();
  if (task.finite_coordinate_domain) return static_cast<size_t>(inst.grid.cell_count());
  return 0;
}

double random_baseline(const TaskSpec& task, const std::vector<const Instance*>& sample) {
  if (sample.empty()) throw std::invalid_argument("random baseline needs a non-empty sample");
  double sum = 0;
  for (const auto* inst : sample) {
    const size_t k = answer_domain_size(task, *inst);
    if (k > 0) sum += 1.0 / static_cast<double>(k);
  }
  return 100.0 * sum / static_cast<double>(sample.size());
}

}  // namespace polarbench
