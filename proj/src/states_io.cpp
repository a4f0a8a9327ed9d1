#include "misembed/states_io.hpp"

#include "misembed/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace misembed {

using nlohmann::json;

namespace {

const char *const kBaseColumns = "energy_half,energy_w,energy_float,config_hex";
const char *const kAnnotationColumns = ",d,l,r_distance,r_deselect,tie";

std::vector<std::string> split(const std::string &line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ','))
    out.push_back(field);
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  return out;
}

template <class T> T parse_number(const std::string &text, const std::string &column) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(column, "cannot parse '" + text + "'");
  return value;
}

Rational parse_ratio(const std::string &text, const std::string &column) {
  try {
    return Rational::parse(text);
  } catch (const ParseError &) {
    throw ParseError(column, "cannot parse ratio '" + text + "'");
  }
}

} // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

void write_states_csv(std::ostream &out, const StatesTable &table) {
  if (table.annotated() && table.annotations.size() != table.states.size())
    throw StructuralError("write_states_csv: annotation count does not match state count");
  json header = table.header;
  header["vertex_count"] = table.vertex_count;
  out << "# " << header.dump() << '\n';
  out << kBaseColumns << (table.annotated() ? kAnnotationColumns : "") << '\n';
  for (std::size_t i = 0; i < table.states.size(); ++i) {
    const auto &s = table.states[i];
    if (s.energy.exact)
      out << s.energy.exact->half_units() << ',' << s.energy.exact->w_units();
    else
      out << ',';
    out << ',' << format_double(s.energy.value) << ',' << s.config.to_hex();
    if (table.annotated()) {
      const auto &a = table.annotations[i];
      out << ',' << a.d << ',' << a.l << ',' << a.r_distance.str() << ',' << a.r_deselect.str() << ','
          << (a.tie ? 1 : 0);
    }
    out << '\n';
  }
}

StatesTable read_states_csv(std::istream &in) {
  StatesTable table;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
    throw ParseError("header", "missing '# {json}' header line");
  try {
    table.header = json::parse(line.substr(2));
  } catch (const json::exception &e) {
    throw ParseError("header", e.what());
  }
  if (!table.header.is_object() || !table.header.contains("vertex_count") ||
      !table.header["vertex_count"].is_number_unsigned())
    throw ParseError("vertex_count", "header must record the host vertex count");
  table.vertex_count = table.header["vertex_count"].get<std::size_t>();
  table.header.erase("vertex_count");

  if (!std::getline(in, line))
    throw ParseError("columns", "missing column row");
  const std::string base = kBaseColumns;
  bool annotated = false;
  if (line == base + kAnnotationColumns)
    annotated = true;
  else if (line != base)
    throw ParseError("columns", "unexpected column row '" + line + "'");

  const std::size_t width = annotated ? 9 : 4;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    const auto f = split(line);
    if (f.size() != width)
      throw ParseError("row", "expected " + std::to_string(width) + " fields in '" + line + "'");
    StateRecord rec;
    if (!f[0].empty() || !f[1].empty())
      rec.energy.exact =
          ExactValue(parse_number<std::int64_t>(f[0], "energy_half"), parse_number<std::int64_t>(f[1], "energy_w"));
    rec.energy.value = parse_number<double>(f[2], "energy_float");
    try {
      rec.config = Configuration::from_hex(f[3], table.vertex_count);
    } catch (const std::exception &e) {
      throw ParseError("config_hex", e.what());
    }
    table.states.push_back(std::move(rec));
    if (annotated) {
      Annotation a;
      a.d = parse_number<std::size_t>(f[4], "d");
      a.l = parse_number<std::size_t>(f[5], "l");
      a.r_distance = parse_ratio(f[6], "r_distance");
      a.r_deselect = parse_ratio(f[7], "r_deselect");
      if (f[8] != "0" && f[8] != "1")
        throw ParseError("tie", "expected 0 or 1");
      a.tie = f[8] == "1";
      table.annotations.push_back(a);
    }
  }
  return table;
}

void write_states_file(const std::filesystem::path &path, const StatesTable &table) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_states_csv(out, table);
}

StatesTable read_states_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  return read_states_csv(in);
}

} // namespace misembed
