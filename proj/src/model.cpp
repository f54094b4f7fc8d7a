#include "slicerlp/model.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace slicerlp {

std::optional<NodeId> Network::find_node(const std::string& name) const {
  for (int i = 0; i < node_count(); ++i) {
    if (node_names[i] == name) return i;
  }
  return std::nullopt;
}

bool Network::is_cloud(NodeId v) const {
  return cloud_capacity(v).has_value();
}

std::optional<double> Network::cloud_capacity(NodeId v) const {
  for (const auto& c : cloud) {
    if (c.node == v) return c.mu;
  }
  return std::nullopt;
}

std::optional<double> Stage::delay_at(NodeId v) const {
  for (const auto& a : admissible) {
    if (a.node == v) return a.nfv_delay;
  }
  return std::nullopt;
}

int Instance::total_chain_length() const {
  int total = 0;
  for (const auto& svc : services) total += svc.chain_length();
  return total;
}

std::set<NodeId> Placement::activated_nodes() const {
  std::set<NodeId> act;
  for (const auto& per_service : hosts) {
    for (NodeId v : per_service) act.insert(v);
  }
  return act;
}

namespace {

bool weakly_connected(const Network& net) {
  int n = net.node_count();
  if (n == 0) return true;
  std::vector<std::vector<int>> adj(n);
  for (const auto& l : net.links) {
    if (l.from < 0 || l.from >= n || l.to < 0 || l.to >= n) continue;
    adj[l.from].push_back(l.to);
    adj[l.to].push_back(l.from);
  }
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : adj[u]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        q.push(w);
      }
    }
  }
  return reached == n;
}

}  // namespace

std::vector<Violation> validate_instance(const Instance& inst) {
  std::vector<Violation> out;
  const Network& net = inst.network;
  const int n = net.node_count();

  if (n == 0) out.push_back({"network", "no nodes"});

  for (int li = 0; li < net.link_count(); ++li) {
    const Link& l = net.links[li];
    std::string ent = "link " + std::to_string(li);
    if (l.from < 0 || l.from >= n) out.push_back({ent, "unknown endpoint (from)"});
    if (l.to < 0 || l.to >= n) out.push_back({ent, "unknown endpoint (to)"});
    if (!(l.delay >= 0.0)) out.push_back({ent, "negative delay"});
    if (!(l.capacity >= 0.0)) out.push_back({ent, "negative capacity"});
  }

  std::set<NodeId> cloud_set;
  for (const auto& c : net.cloud) {
    std::string ent = "cloud node " + std::to_string(c.node);
    if (c.node < 0 || c.node >= n) {
      out.push_back({ent, "cloud node not in node set"});
      continue;
    }
    if (!(c.mu >= 0.0)) out.push_back({ent, "negative compute capacity"});
    if (!cloud_set.insert(c.node).second) out.push_back({ent, "duplicate cloud entry"});
  }

  if (n > 0 && !weakly_connected(net)) out.push_back({"network", "not connected"});

  for (const auto& svc : inst.services) {
    std::string sent = "service " + std::to_string(svc.id);
    if (svc.src < 0 || svc.src >= n) out.push_back({sent, "unknown source node"});
    if (svc.dst < 0 || svc.dst >= n) out.push_back({sent, "unknown destination node"});
    if (cloud_set.count(svc.src)) out.push_back({sent, "source in cloud set"});
    if (cloud_set.count(svc.dst)) out.push_back({sent, "destination in cloud set"});
    if (static_cast<int>(svc.rates.size()) != svc.chain_length() + 1) {
      out.push_back({sent, "rates length must be chain length + 1"});
    }
    for (double r : svc.rates) {
      if (!(r >= 0.0)) out.push_back({sent, "negative rate"});
    }
    if (!(svc.deadline > 0.0)) out.push_back({sent, "deadline must be positive"});
    for (int s = 1; s <= svc.chain_length(); ++s) {
      const Stage& st = svc.stages[s - 1];
      std::string ent = sent + ", stage " + std::to_string(s);
      if (st.admissible.empty()) {
        out.push_back({ent, "stage uncoverable"});
        continue;
      }
      std::set<NodeId> seen;
      for (const auto& a : st.admissible) {
        if (!cloud_set.count(a.node)) {
          out.push_back({ent, "admissible node is not a cloud node"});
        }
        if (!(a.nfv_delay >= 0.0)) out.push_back({ent, "negative NFV delay"});
        if (!seen.insert(a.node).second) out.push_back({ent, "duplicate admissible node"});
      }
    }
  }

  if (inst.path_budget < 1) out.push_back({"params", "path budget P must be >= 1"});
  if (!(inst.sigma > 0.0)) out.push_back({"params", "sigma must be positive"});

  return out;
}

std::optional<double> shortest_delay(const Network& net, NodeId a, NodeId b) {
  const int n = net.node_count();
  if (a < 0 || a >= n) throw std::out_of_range("shortest_delay: unknown node a");
  if (b < 0 || b >= n) throw std::out_of_range("shortest_delay: unknown node b");

  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const auto& l : net.links) adj[l.from].push_back({l.to, l.delay});

  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  dist[a] = 0.0;
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.push({0.0, a});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    if (u == b) break;
    for (auto [w, dw] : adj[u]) {
      double nd = d + dw;
      if (nd < dist[w]) {
        dist[w] = nd;
        heap.push({nd, w});
      }
    }
  }
  if (std::isinf(dist[b])) return std::nullopt;
  return dist[b];
}

std::vector<Violation> check_placement(const Instance& inst, const Placement& p) {
  std::vector<Violation> out;
  const Network& net = inst.network;

  if (static_cast<int>(p.hosts.size()) != inst.service_count()) {
    out.push_back({"placement", "one host list required per service"});
    return out;
  }
  std::map<NodeId, double> load;
  for (int k = 0; k < inst.service_count(); ++k) {
    const ServiceRequest& svc = inst.services[k];
    std::string sent = "service " + std::to_string(svc.id);
    if (static_cast<int>(p.hosts[k].size()) != svc.chain_length()) {
      out.push_back({sent, "host count differs from chain length"});
      continue;
    }
    for (int s = 1; s <= svc.chain_length(); ++s) {
      NodeId v = p.hosts[k][s - 1];
      std::string ent = sent + ", stage " + std::to_string(s);
      if (!svc.stages[s - 1].delay_at(v).has_value()) {
        out.push_back({ent, "host not admissible for the stage"});
        continue;
      }
      load[v] += svc.rates[s];
    }
  }
  for (auto [v, used] : load) {
    auto mu = net.cloud_capacity(v);
    if (!mu.has_value()) {
      out.push_back({"node " + std::to_string(v), "host is not a cloud node"});
    } else if (used > *mu + 1e-7) {
      out.push_back({"node " + std::to_string(v), "node capacity exceeded"});
    }
  }
  return out;
}

}  // namespace slicerlp
