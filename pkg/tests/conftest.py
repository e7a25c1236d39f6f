import pytest

from dglcalc import DglModel, DglMorphism, FreeLieAlgebra


def make_cp2_model(truncation=10):
    """L(x1, x3; d x3 = [x1, x1]), the pinch-source model with upper grading."""
    alg = FreeLieAlgebra([("x1", 1, 0), ("x3", 3, 1)], truncation=truncation)
    x1 = alg.gen("x1")
    return DglModel(alg, {"x3": x1.bracket(x1)}, name="CP2")


def make_s4_model(truncation=10):
    """L(u3; d = 0) with upper grading zero."""
    alg = FreeLieAlgebra([("u3", 3, 0)], truncation=truncation)
    return DglModel(alg, {}, name="S4")


def make_pinch_map(truncation=10):
    """x1 -> 0, x3 -> u3: the pinch collapse of the bottom cell."""
    src = make_cp2_model(truncation)
    dst = make_s4_model(truncation)
    values = {"x1": dst.algebra.zero(1), "x3": dst.algebra.gen("u3")}
    return DglMorphism(src, dst, values, name="f")


def make_sphere_model(degree, truncation=10, name=None):
    """L(x; d = 0) with |x| = degree (model of S^{degree+1})."""
    alg = FreeLieAlgebra([("x", degree, 0)], truncation=truncation)
    return DglModel(alg, {}, name=name or f"S{degree + 1}")


def make_contractible_pair(truncation=9):
    """Inclusion L(w) -> L(w, y; d y = w) with |w| = 2."""
    src_alg = FreeLieAlgebra([("w", 2)], truncation=truncation)
    src = DglModel(src_alg, {}, name="X")
    dst_alg = FreeLieAlgebra([("w", 2), ("y", 3)], truncation=truncation)
    dst = DglModel(dst_alg, {"y": dst_alg.gen("w")}, name="Y")
    incl = DglMorphism(src, dst, {"w": dst_alg.gen("w")}, name="i")
    return src, dst, incl


def make_s3xs3_model(truncation=12):
    """L(a, b, c; d c = [a, b]) with |a| = |b| = 2, |c| = 5; uppers 0,0,1."""
    alg = FreeLieAlgebra([("a", 2, 0), ("b", 2, 0), ("c", 5, 1)], truncation=truncation)
    return DglModel(alg, {"c": alg.gen("a").bracket(alg.gen("b"))}, name="S3xS3")


def make_factor_inclusion(truncation=12):
    """S3 -> S3xS3 sending the generator to the first factor."""
    src_alg = FreeLieAlgebra([("a", 2, 0)], truncation=truncation)
    src = DglModel(src_alg, {}, name="S3")
    dst = make_s3xs3_model(truncation)
    incl = DglMorphism(src, dst, {"a": dst.algebra.gen("a")}, name="j")
    return src, dst, incl


def make_one_cell_attachment(truncation=12):
    """S3xS3 model with a cell attached along a: d y = a, |y| = 3."""
    src = make_s3xs3_model(truncation)
    dst_alg = FreeLieAlgebra(
        [("a", 2), ("b", 2), ("c", 5), ("y", 3)], truncation=truncation
    )
    dst = DglModel(
        dst_alg,
        {"c": dst_alg.gen("a").bracket(dst_alg.gen("b")), "y": dst_alg.gen("a")},
        name="Y",
    )
    values = {g.name: dst_alg.gen(g.name) for g in src.generators}
    incl = DglMorphism(src, dst, values, name="i")
    return src, dst, incl


@pytest.fixture
def cp2():
    return make_cp2_model()


@pytest.fixture
def s4():
    return make_s4_model()


@pytest.fixture
def pinch():
    return make_pinch_map()
