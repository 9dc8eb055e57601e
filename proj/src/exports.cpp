#include "coengage/exports.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>

#include "coengage/csv.hpp"

namespace coengage {

void write_edge_csv(const CoengagementGraph& x, const std::string& path) {
  FileWriter out(path);
  std::string buf = "source,target,weight\n";
  const Interner& interner = x.interner();
  for (const auto& e : x.edges()) {
    buf += csv_escape(interner.handle(e.a));
    buf += ',';
    buf += csv_escape(interner.handle(e.b));
    buf += ',';
    buf += std::to_string(e.weight);
    buf += '\n';
    out.append(buf);
  }
  out.append(buf, true);
  out.close();
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
    case '&':
      out += "&amp;";
      break;
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '"':
      out += "&quot;";
      break;
    case '\'':
      out += "&apos;";
      break;
    default:
      out.push_back(c);
    }
  }
  return out;
}

void write_gexf(const CoengagementGraph& x, const ClusterAssignment* clusters,
                const AttributeMap* attrs, const std::string& path) {
  if (x.empty())
    throw ValidationError("refusing to write GEXF for an empty graph");
  if (clusters && clusters->community.size() != x.node_count())
    throw ValidationError("cluster assignment does not match graph");

  FileWriter out(path);
  std::string buf;
  buf.reserve(1 << 20);
  buf += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  buf += "<gexf xmlns=\"http://www.gexf.net/1.2draft\" "
         "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
         "xsi:schemaLocation=\"http://www.gexf.net/1.2draft "
         "http://www.gexf.net/1.2draft/gexf.xsd\" version=\"1.2\">\n";
  buf += "  <meta>\n    <creator>coengage</creator>\n    <description>coengagement graph (n=";
  buf += std::to_string(x.params().n);
  buf += ", s=";
  buf += std::to_string(x.params().s);
  buf += ")</description>\n  </meta>\n";
  buf += "  <graph defaultedgetype=\"undirected\" mode=\"static\">\n";
  buf += "    <attributes class=\"node\">\n";
  buf += "      <attribute id=\"0\" title=\"weighted_degree\" type=\"long\"/>\n";
  if (clusters)
    buf += "      <attribute id=\"1\" title=\"cluster\" type=\"string\"/>\n";
  if (attrs)
    buf += "      <attribute id=\"2\" title=\"suspended\" type=\"boolean\"/>\n";
  buf += "    </attributes>\n";

  buf += "    <nodes count=\"" + std::to_string(x.node_count()) + "\">\n";
  for (std::size_t i = 0; i < x.node_count(); ++i) {
    const std::string& handle = x.handle_at(i);
    std::string label = handle;
    const NodeAttributes* na = nullptr;
    if (attrs) {
      auto it = attrs->find(handle);
      if (it != attrs->end()) {
        na = &it->second;
        if (na->display_label)
          label = *na->display_label;
      }
    }
    buf += "      <node id=\"" + xml_escape(handle) + "\" label=\"" + xml_escape(label) + "\">\n";
    buf += "        <attvalues>\n";
    buf += "          <attvalue for=\"0\" value=\"" + std::to_string(x.weighted_degree_at(i)) +
           "\"/>\n";
    if (clusters) {
      std::uint32_t c = clusters->community[i];
      auto lit = clusters->labels.find(c);
      std::string cluster = lit != clusters->labels.end() ? lit->second : std::to_string(c);
      buf += "          <attvalue for=\"1\" value=\"" + xml_escape(cluster) + "\"/>\n";
    }
    if (na && na->suspended)
      buf += std::string("          <attvalue for=\"2\" value=\"") +
             (*na->suspended ? "true" : "false") + "\"/>\n";
    buf += "        </attvalues>\n      </node>\n";
    out.append(buf);
  }
  buf += "    </nodes>\n";

  buf += "    <edges count=\"" + std::to_string(x.edge_count()) + "\">\n";
  const Interner& interner = x.interner();
  std::size_t edge_id = 0;
  for (const auto& e : x.edges()) {
    buf += "      <edge id=\"" + std::to_string(edge_id++) + "\" source=\"" +
           xml_escape(interner.handle(e.a)) + "\" target=\"" + xml_escape(interner.handle(e.b)) +
           "\" weight=\"" + std::to_string(e.weight) + "\"/>\n";
    out.append(buf);
  }
  buf += "    </edges>\n  </graph>\n</gexf>\n";
  out.append(buf, true);
  out.close();
}

void write_summary_json(const nlohmann::json& payload, const std::string& path) {
  FileWriter out(path);
  out.write(payload.dump(2));
  out.write("\n");
  out.close();
}

} // namespace coengage
