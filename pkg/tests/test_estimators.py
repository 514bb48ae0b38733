import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import Pipeline
from sklearn.preprocessing import FunctionTransformer

from rch import catalog
from rch.estimators import ColorHomologyFeatures


@pytest.fixture(scope="module")
def diagrams():
    return [catalog.get(name).diagram for name in ("theta", "K4s", "B_2k")]


def test_fit_transform_gives_integer_counts(diagrams):
    features = ColorHomologyFeatures(n=4).fit_transform(diagrams)
    assert features.dtype == np.int64
    assert features.tolist() == [[24, 0, 0, 0, 0, 0, 0], [24, 0, 0, 0, 0, 0, 24], [0, 12, 0, 0, 0, 0, 0]]


def test_filtered_mode_agrees_with_state_counts(diagrams):
    counted = ColorHomologyFeatures(n=3).fit_transform(diagrams)
    filtered = ColorHomologyFeatures(n=3, mode="filtered").fit_transform(diagrams)
    assert (counted == filtered).all()


def test_params_round_trip_through_clone():
    transformer = ColorHomologyFeatures(n=5, mode="filtered", max_generators=100)
    assert transformer.get_params() == {"n": 5, "mode": "filtered", "max_generators": 100}
    assert clone(transformer).get_params() == transformer.get_params()
    assert transformer.set_params(n=3).n == 3


def test_transform_before_fit_raises(diagrams):
    with pytest.raises(NotFittedError):
        ColorHomologyFeatures().transform(diagrams)


def test_invalid_parameters_are_rejected(diagrams):
    with pytest.raises(ValueError):
        ColorHomologyFeatures(mode="nope").fit(diagrams)
    with pytest.raises(ValueError):
        ColorHomologyFeatures(n=1).fit(diagrams)


def test_matched_diagrams_need_filtered_mode():
    with pytest.raises(ValueError):
        ColorHomologyFeatures().fit([catalog.get("K33-pm").diagram])
    features = ColorHomologyFeatures(n=3, mode="filtered").fit_transform([catalog.get("K33-pm").diagram])
    assert features.tolist() == [[6, 0, 0, 6]]


def test_wider_diagram_than_fitted_is_rejected(diagrams):
    transformer = ColorHomologyFeatures(n=4).fit([catalog.get("theta").diagram])
    with pytest.raises(ValueError):
        transformer.transform([catalog.get("K4t").diagram])


def test_pipeline_and_feature_names(diagrams):
    pipeline = Pipeline([("homology", ColorHomologyFeatures(n=4)), ("total", FunctionTransformer(lambda x: x.sum(axis=1)))])
    assert pipeline.fit_transform(diagrams).tolist() == [24, 48, 12]
    names = pipeline.named_steps["homology"].get_feature_names_out()
    assert names[0] == "total_face_color_degree_0"
