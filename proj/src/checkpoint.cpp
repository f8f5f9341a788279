#include "sgsim/checkpoint.hpp"

#include <fstream>

namespace sgsim {

namespace {

const char* form_name(MpsForm f) {
  switch (f) {
    case MpsForm::LeftCanonical: return "left";
    case MpsForm::RightCanonical: return "right";
    case MpsForm::Mixed: return "mixed";
    case MpsForm::InfiniteUnitCell: return "infinite";
  }
  return "unknown";
}

MpsForm form_from_name(const std::string& s) {
  if (s == "left") return MpsForm::LeftCanonical;
  if (s == "right") return MpsForm::RightCanonical;
  if (s == "mixed") return MpsForm::Mixed;
  if (s == "infinite") return MpsForm::InfiniteUnitCell;
  throw CheckpointError("unknown canonical form: " + s);
}

} // namespace

void save_mps(const std::string& path, const MpsState& psi,
              const nlohmann::json& metadata) {
  nlohmann::json j;
  j["format"] = "sgsim-mps";
  j["version"] = kCheckpointVersion;
  j["form"] = form_name(psi.form);
  j["center"] = psi.center;
  j["local_dim"] = psi.local_dim;
  j["bond_spectra"] = psi.bond_spectra;
  j["metadata"] = metadata;
  nlohmann::json sites = nlohmann::json::array();
  for (const auto& t : psi.sites) {
    nlohmann::json site;
    site["shape"] = t.shape();
    std::vector<double> re(t.size()), im(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      re[i] = t.data()[i].real();
      im[i] = t.data()[i].imag();
    }
    site["re"] = std::move(re);
    site["im"] = std::move(im);
    sites.push_back(std::move(site));
  }
  j["sites"] = std::move(sites);

  std::ofstream out(path);
  if (!out) throw CheckpointError("cannot open for writing: " + path);
  out << j.dump();
  if (!out) throw CheckpointError("write failed: " + path);
}

LoadedCheckpoint load_mps(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CheckpointError("cannot open: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError("malformed checkpoint " + path + ": " + e.what());
  }
  if (j.value("format", "") != "sgsim-mps")
    throw CheckpointError("not an MPS checkpoint: " + path);
  if (j.value("version", -1) != kCheckpointVersion)
    throw CheckpointError("unsupported checkpoint version in " + path);

  LoadedCheckpoint out;
  out.metadata = j.value("metadata", nlohmann::json{});
  MpsState& psi = out.state;
  psi.form = form_from_name(j.at("form").get<std::string>());
  psi.center = j.at("center").get<std::size_t>();
  psi.local_dim = j.at("local_dim").get<std::size_t>();
  psi.bond_spectra = j.at("bond_spectra").get<std::vector<std::vector<double>>>();
  for (const auto& site : j.at("sites")) {
    const auto shape = site.at("shape").get<std::vector<std::size_t>>();
    const auto re = site.at("re").get<std::vector<double>>();
    const auto im = site.at("im").get<std::vector<double>>();
    if (re.size() != im.size()) throw CheckpointError("re/im length mismatch");
    std::vector<cxd> elems(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) elems[i] = cxd(re[i], im[i]);
    psi.sites.emplace_back(shape, std::move(elems));
  }
  return out;
}

} // namespace sgsim
