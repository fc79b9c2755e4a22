// Python bindings for the core operations: feature extraction (KDDA and
// kernel PCA), binary SVM training, the multiclass ensembles, synthetic
// data, per-class splits, model persistence, and the experiment runner.

#include <functional>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kdda/class_index.hpp"
#include "kdda/dataset.hpp"
#include "kdda/errors.hpp"
#include "kdda/extractors.hpp"
#include "kdda/harness.hpp"
#include "kdda/model_io.hpp"
#include "kdda/multiclass.hpp"
#include "kdda/svm.hpp"

namespace py = pybind11;

namespace {

using Samples = std::vector<std::vector<double>>;

kdda::KernelSpec make_kernel(const std::string& family, double sigma2,
                             int degree, double offset) {
  kdda::KernelSpec spec;
  spec.family = kdda::kernel_family_from_name(family);
  spec.sigma2 = sigma2;
  spec.degree = degree;
  spec.offset = offset;
  spec.validate();
  return spec;
}

Samples transform_many(const Samples& xs,
                       const std::function<std::vector<double>(
                           std::span<const double>)>& op) {
  Samples out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(op(x));
  return out;
}

kdda::SvmTrainConfig make_svm_config(const std::string& kernel, double sigma2,
                                     int degree, double offset, double c,
                                     double tol) {
  kdda::SvmTrainConfig cfg;
  cfg.kernel = make_kernel(kernel, sigma2, degree, offset);
  cfg.c_cost = c;
  cfg.kkt_tol = tol;
  return cfg;
}

py::list report_rows(const kdda::Report& report) {
  py::list rows;
  for (const auto& cell : report.cells) {
    py::dict row;
    row["k_train"] = cell.k_train;
    row["method"] = cell.method;
    row["mean_rate"] = cell.mean_rate;
    row["stddev"] = cell.stddev;
    row["repeats"] = cell.per_repeat.size();
    row["failures"] = cell.failures;
    rows.append(row);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_kdda, m) {
  m.doc() = "kernel discriminant feature extraction and SVM classification";
  m.attr("__version__") = "0.1.0";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const kdda::IoError& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    } catch (const kdda::Error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<kdda::KddaModel>(m, "KddaModel")
      .def_readonly("m_features", &kdda::KddaModel::m_features)
      .def_readonly("m_clamped", &kdda::KddaModel::m_clamped)
      .def("transform",
           [](const kdda::KddaModel& model, const std::vector<double>& x) {
             return kdda::kdda_transform(model, x);
           })
      .def("transform_many",
           [](const kdda::KddaModel& model, const Samples& xs) {
             return transform_many(xs, [&](std::span<const double> x) {
               return kdda::kdda_transform(model, x);
             });
           });

  py::class_<kdda::KpcaModel>(m, "KpcaModel")
      .def_readonly("m_features", &kdda::KpcaModel::m_features)
      .def_readonly("m_clamped", &kdda::KpcaModel::m_clamped)
      .def_readonly("degenerate", &kdda::KpcaModel::degenerate)
      .def_readonly("component_variances",
                    &kdda::KpcaModel::component_variances)
      .def("transform",
           [](const kdda::KpcaModel& model, const std::vector<double>& x) {
             return kdda::kpca_transform(model, x);
           })
      .def("transform_many",
           [](const kdda::KpcaModel& model, const Samples& xs) {
             return transform_many(xs, [&](std::span<const double> x) {
               return kdda::kpca_transform(model, x);
             });
           });

  py::class_<kdda::SvmModel>(m, "SvmModel")
      .def_readonly("bias", &kdda::SvmModel::bias)
      .def_readonly("converged", &kdda::SvmModel::converged)
      .def_property_readonly("n_support",
                             [](const kdda::SvmModel& model) {
                               return model.support_vectors.size();
                             })
      .def("decision",
           [](const kdda::SvmModel& model, const std::vector<double>& x) {
             return kdda::decision(model, x);
           });

  py::class_<kdda::OvrModel>(m, "OvrModel")
      .def_readonly("num_classes", &kdda::OvrModel::num_classes)
      .def("predict",
           [](const kdda::OvrModel& model, const std::vector<double>& x) {
             return kdda::ovr_predict(model, x);
           })
      .def("predict_many", [](const kdda::OvrModel& model, const Samples& xs) {
        std::vector<int> out;
        out.reserve(xs.size());
        for (const auto& x : xs) out.push_back(kdda::ovr_predict(model, x));
        return out;
      });

  py::class_<kdda::PairwiseModel>(m, "PairwiseModel")
      .def_readonly("num_classes", &kdda::PairwiseModel::num_classes)
      .def_property_readonly("n_pairs",
                             [](const kdda::PairwiseModel& model) {
                               return model.pairs.size();
                             })
      .def("predict",
           [](const kdda::PairwiseModel& model, const std::vector<double>& x) {
             return kdda::pairwise_predict(model, x);
           });

  py::class_<kdda::NnModel>(m, "NnModel")
      .def("predict",
           [](const kdda::NnModel& model, const std::vector<double>& x) {
             return kdda::nn_predict(model, x);
           });

  m.def(
      "kdda_fit",
      [](const Samples& samples, const std::vector<int>& labels,
         const std::string& kernel, double sigma2, int degree, double offset,
         std::size_t features) {
        const auto index = kdda::ClassIndex::from_labels(labels);
        return kdda::kdda_fit(samples, index,
                              make_kernel(kernel, sigma2, degree, offset),
                              features);
      },
      py::arg("samples"), py::arg("labels"), py::arg("kernel") = "rbf",
      py::arg("sigma2") = 1.0, py::arg("degree") = 2, py::arg("offset") = 0.0,
      py::arg("features") = 0,
      "Fit the kernel discriminant extractor; features=0 keeps C-1.");

  m.def(
      "kpca_fit",
      [](const Samples& samples, const std::string& kernel, double sigma2,
         int degree, double offset, std::size_t features) {
        if (features == 0) {
          throw kdda::InvalidConfig("kpca_fit needs features >= 1");
        }
        return kdda::kpca_fit(
            samples, make_kernel(kernel, sigma2, degree, offset), features);
      },
      py::arg("samples"), py::arg("kernel") = "rbf", py::arg("sigma2") = 1.0,
      py::arg("degree") = 2, py::arg("offset") = 0.0, py::arg("features") = 1,
      "Fit kernel PCA keeping the requested component count.");

  m.def(
      "svm_train",
      [](const Samples& samples, const std::vector<int>& labels,
         const std::string& kernel, double sigma2, int degree, double offset,
         double c, double tol) {
        return kdda::svm_train(
            samples, labels,
            make_svm_config(kernel, sigma2, degree, offset, c, tol));
      },
      py::arg("samples"), py::arg("labels"), py::arg("kernel") = "rbf",
      py::arg("sigma2") = 1.0, py::arg("degree") = 2, py::arg("offset") = 0.0,
      py::arg("c") = 10.0, py::arg("tol") = 1e-3,
      "Train a binary soft-margin SVM; labels are +1/-1.");

  m.def(
      "ovr_train",
      [](const Samples& features, const std::vector<int>& labels,
         const std::string& kernel, double sigma2, int degree, double offset,
         double c, double tol) {
        return kdda::ovr_train(
            features, kdda::ClassIndex::from_labels(labels),
            make_svm_config(kernel, sigma2, degree, offset, c, tol));
      },
      py::arg("features"), py::arg("labels"), py::arg("kernel") = "rbf",
      py::arg("sigma2") = 1.0, py::arg("degree") = 2, py::arg("offset") = 0.0,
      py::arg("c") = 10.0, py::arg("tol") = 1e-3,
      "Train one-vs-rest SVMs over classes labeled 1..k.");

  m.def(
      "pairwise_train",
      [](const Samples& features, const std::vector<int>& labels,
         const std::string& kernel, double sigma2, int degree, double offset,
         double c, double tol) {
        return kdda::pairwise_train(
            features, kdda::ClassIndex::from_labels(labels),
            make_svm_config(kernel, sigma2, degree, offset, c, tol));
      },
      py::arg("features"), py::arg("labels"), py::arg("kernel") = "rbf",
      py::arg("sigma2") = 1.0, py::arg("degree") = 2, py::arg("offset") = 0.0,
      py::arg("c") = 10.0, py::arg("tol") = 1e-3,
      "Train the k(k-1)/2 pairwise SVMs with Gaussian vote statistics.");

  m.def(
      "nn_train",
      [](const Samples& features, const std::vector<int>& labels) {
        return kdda::nn_train(features, labels);
      },
      py::arg("features"), py::arg("labels"),
      "Store features for nearest-neighbor classification.");

  m.def(
      "make_rings",
      [](int classes, int per_class, double noise, std::uint64_t seed) {
        const kdda::Dataset ds =
            kdda::make_rings(classes, per_class, noise, seed);
        return py::make_tuple(ds.samples, ds.labels);
      },
      py::arg("classes") = 4, py::arg("per_class") = 50,
      py::arg("noise") = 0.05, py::arg("seed") = 0,
      "Concentric-rings dataset: (samples, labels).");

  m.def(
      "split_per_class",
      [](const Samples& samples, const std::vector<int>& labels,
         std::size_t k_train, std::uint64_t seed, std::uint64_t repeat) {
        kdda::Dataset ds;
        ds.samples = samples;
        ds.labels = labels;
        ds.names.resize(samples.size());
        const auto [train, test] =
            kdda::split_per_class(ds, kdda::SplitSpec{k_train, seed, repeat});
        return py::make_tuple(train.samples, train.labels, test.samples,
                              test.labels);
      },
      py::arg("samples"), py::arg("labels"), py::arg("k_train"),
      py::arg("seed") = 0, py::arg("repeat") = 0,
      "Deterministic per-class split: (train_x, train_y, test_x, test_y).");

  m.def("save_kdda_model", &kdda::save_kdda_model, py::arg("path"),
        py::arg("model"));
  m.def("load_kdda_model", &kdda::load_kdda_model, py::arg("path"));
  m.def("save_svm_model", &kdda::save_svm_model, py::arg("path"),
        py::arg("model"));
  m.def("load_svm_model", &kdda::load_svm_model, py::arg("path"));

  m.def(
      "run_config",
      [](const std::string& config_text) {
        return report_rows(
            kdda::run_experiment(kdda::parse_config_text(config_text)));
      },
      py::arg("config_text"),
      "Run an experiment from config text; returns one dict per cell.");
}
