#include "slicerlp/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace slicerlp {

using nlohmann::ordered_json;

namespace {

const ordered_json& require_field(const ordered_json& obj, const std::string& key,
                                  const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

double number_field(const ordered_json& obj, const std::string& key,
                    const std::string& where) {
  const auto& v = require_field(obj, key, where);
  if (!v.is_number()) throw ParseError(where + ": field '" + key + "' must be a number");
  return v.get<double>();
}

std::string string_field(const ordered_json& obj, const std::string& key,
                         const std::string& where) {
  const auto& v = require_field(obj, key, where);
  if (!v.is_string()) throw ParseError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

NodeId resolve_node(const Network& net, const std::string& name, const std::string& where) {
  auto id = net.find_node(name);
  if (!id.has_value()) throw ParseError(where + ": unknown node '" + name + "'");
  return *id;
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  const Network& net = inst.network;
  ordered_json doc;
  doc["nodes"] = net.node_names;

  ordered_json links = ordered_json::array();
  for (const auto& l : net.links) {
    links.push_back({{"i", net.node_names[l.from]},
                     {"j", net.node_names[l.to]},
                     {"delay", l.delay},
                     {"capacity", l.capacity}});
  }
  doc["links"] = links;

  ordered_json cloud = ordered_json::array();
  for (const auto& c : net.cloud) {
    cloud.push_back({{"v", net.node_names[c.node]}, {"mu", c.mu}});
  }
  doc["cloud"] = cloud;

  ordered_json services = ordered_json::array();
  for (const auto& svc : inst.services) {
    ordered_json stages = ordered_json::array();
    for (const auto& st : svc.stages) {
      ordered_json adm = ordered_json::array();
      for (const auto& a : st.admissible) {
        adm.push_back({{"v", net.node_names[a.node]}, {"delay", a.nfv_delay}});
      }
      stages.push_back({{"admissible", adm}});
    }
    services.push_back({{"id", svc.id},
                        {"src", net.node_names[svc.src]},
                        {"dst", net.node_names[svc.dst]},
                        {"stages", stages},
                        {"rates", svc.rates},
                        {"deadline", svc.deadline}});
  }
  doc["services"] = services;
  doc["params"] = {{"P", inst.path_budget}, {"sigma", inst.sigma}};
  return doc.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("document: ") + e.what());
  }

  Instance inst;
  Network& net = inst.network;

  const auto& nodes = require_field(doc, "nodes", "document");
  if (!nodes.is_array()) throw ParseError("nodes: must be an array");
  for (const auto& n : nodes) {
    if (!n.is_string()) throw ParseError("nodes: entries must be strings");
    net.node_names.push_back(n.get<std::string>());
  }

  const auto& links = require_field(doc, "links", "document");
  if (!links.is_array()) throw ParseError("links: must be an array");
  for (size_t idx = 0; idx < links.size(); ++idx) {
    std::string where = "links[" + std::to_string(idx) + "]";
    const auto& l = links[idx];
    Link link;
    link.from = resolve_node(net, string_field(l, "i", where), where);
    link.to = resolve_node(net, string_field(l, "j", where), where);
    link.delay = number_field(l, "delay", where);
    link.capacity = number_field(l, "capacity", where);
    net.links.push_back(link);
  }

  const auto& cloud = require_field(doc, "cloud", "document");
  if (!cloud.is_array()) throw ParseError("cloud: must be an array");
  for (size_t idx = 0; idx < cloud.size(); ++idx) {
    std::string where = "cloud[" + std::to_string(idx) + "]";
    const auto& c = cloud[idx];
    CloudNode cn;
    cn.node = resolve_node(net, string_field(c, "v", where), where);
    cn.mu = number_field(c, "mu", where);
    net.cloud.push_back(cn);
  }

  const auto& services = require_field(doc, "services", "document");
  if (!services.is_array()) throw ParseError("services: must be an array");
  for (size_t idx = 0; idx < services.size(); ++idx) {
    std::string where = "services[" + std::to_string(idx) + "]";
    const auto& s = services[idx];
    ServiceRequest svc;
    const auto& idv = require_field(s, "id", where);
    if (!idv.is_number_integer()) throw ParseError(where + ": field 'id' must be an integer");
    svc.id = idv.get<int>();
    svc.src = resolve_node(net, string_field(s, "src", where), where);
    svc.dst = resolve_node(net, string_field(s, "dst", where), where);

    const auto& stages = require_field(s, "stages", where);
    if (!stages.is_array()) throw ParseError(where + ": field 'stages' must be an array");
    for (size_t si = 0; si < stages.size(); ++si) {
      std::string swhere = where + ".stages[" + std::to_string(si) + "]";
      const auto& adm = require_field(stages[si], "admissible", swhere);
      if (!adm.is_array()) throw ParseError(swhere + ": field 'admissible' must be an array");
      Stage stage;
      for (size_t ai = 0; ai < adm.size(); ++ai) {
        std::string awhere = swhere + ".admissible[" + std::to_string(ai) + "]";
        AdmissibleNode a;
        a.node = resolve_node(net, string_field(adm[ai], "v", awhere), awhere);
        a.nfv_delay = number_field(adm[ai], "delay", awhere);
        stage.admissible.push_back(a);
      }
      svc.stages.push_back(std::move(stage));
    }

    const auto& rates = require_field(s, "rates", where);
    if (!rates.is_array()) throw ParseError(where + ": field 'rates' must be an array");
    for (const auto& r : rates) {
      if (!r.is_number()) throw ParseError(where + ": rates entries must be numbers");
      svc.rates.push_back(r.get<double>());
    }
    svc.deadline = number_field(s, "deadline", where);
    inst.services.push_back(std::move(svc));
  }

  const auto& params = require_field(doc, "params", "document");
  const auto& pv = require_field(params, "P", "params");
  if (!pv.is_number_integer()) throw ParseError("params: field 'P' must be an integer");
  inst.path_budget = pv.get<int>();
  inst.sigma = number_field(params, "sigma", "params");

  auto violations = validate_instance(inst);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "instance violates invariants:";
    for (const auto& v : violations) msg << " [" << v.entity << ": " << v.rule << "]";
    throw InvalidInstanceError(msg.str(), std::move(violations));
  }
  return inst;
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << instance_to_json(inst);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

}  // namespace slicerlp
