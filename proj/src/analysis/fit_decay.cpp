#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qlandau/analysis/analysis.hpp"
#include "qlandau/core/error.hpp"

namespace qlandau {

namespace {

struct Line {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

Line regress(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  Line l;
  l.slope = sxy / sxx;
  l.intercept = my - l.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (l.intercept + l.slope * x[i]);
    sse += r * r;
  }
  l.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  return l;
}

double prominence(const std::vector<double>& s, std::size_t i) {
  double left = s[i], right = s[i];
  for (std::size_t a = i; a-- > 0;) {
    if (s[a] > s[i]) break;
    left = std::min(left, s[a]);
  }
  for (std::size_t a = i + 1; a < s.size(); ++a) {
    if (s[a] > s[i]) break;
    right = std::min(right, s[a]);
  }
  return s[i] - std::max(left, right);
}

}  // namespace

DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& s, double t_min, double t_max) {
  require(t.size() == s.size(), "fit_decay: t and s must have the same length");
  std::vector<double> tw, sw;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_min || t[i] > t_max) continue;
    if (!(s[i] > 0.0)) {
      std::ostringstream msg;
      msg << "fit_decay: non-positive sample " << s[i] << " at t = " << t[i];
      fail(ErrorKind::invalid_argument, msg.str());
    }
    tw.push_back(t[i]);
    sw.push_back(s[i]);
  }
  if (tw.size() < 20) {
    std::ostringstream msg;
    msg << "fit_decay: window holds " << tw.size() << " samples, need >= 20";
    fail(ErrorKind::invalid_argument, msg.str());
  }
  for (std::size_t i = 1; i < tw.size(); ++i) {
    require(tw[i] > tw[i - 1], "fit_decay: times must be strictly increasing");
  }

  std::vector<double> pt, pv;
  for (std::size_t i = 1; i + 1 < sw.size(); ++i) {
    if (!(sw[i] > sw[i - 1] && sw[i] >= sw[i + 1])) continue;
    if (prominence(sw, i) < 0.3 * sw[i]) continue;
    const double y0 = std::log(sw[i - 1]), y1 = std::log(sw[i]), y2 = std::log(sw[i + 1]);
    const double h0 = tw[i] - tw[i - 1], h1 = tw[i + 1] - tw[i];
    // Parabola through the three log samples (nonuniform spacing).
    const double d1 = (y1 - y0) / h0, d2 = (y2 - y1) / h1;
    const double c = (d2 - d1) / (h0 + h1);
    const double b = d1 + c * h0;  // slope at tw[i]
    if (c < 0.0) {
      const double dt = -b / (2.0 * c);
      pt.push_back(tw[i] + dt);
      pv.push_back(y1 + b * dt + c * dt * dt);
    } else {
      pt.push_back(tw[i]);
      pv.push_back(y1);
    }
  }

  DecayFit fit;
  fit.samples = tw.size();
  fit.peaks = pt.size();
  if (pt.size() >= 3) {
    const Line l = regress(pt, pv);
    fit.gamma = -l.slope;
    fit.omega = std::numbers::pi * static_cast<double>(pt.size() - 1) / (pt.back() - pt.front());
    fit.goodness = l.r2;
  } else {
    std::vector<double> ls(sw.size());
    for (std::size_t i = 0; i < sw.size(); ++i) ls[i] = std::log(sw[i]);
    const Line l = regress(tw, ls);
    fit.gamma = -l.slope;
    fit.omega = 0.0;
    fit.goodness = l.r2;
  }
  return fit;
}

}  // namespace qlandau
