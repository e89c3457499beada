"""Regularized linear discriminant analysis, split protocols, and evaluation.

The pooled within-class covariance uses the maximum-likelihood (1/m)
normalization so that duplicating every training sample leaves the model
unchanged, and is shrunk by lambda * (trace/p) * I to stay positive
definite when features outnumber samples.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .errors import InvalidArgumentError, InvalidInputError

DEFAULT_SHRINKAGE = 1e-3

FIXED_FOLDS = "fixed-folds"
RANDOM_STRATIFIED = "random-stratified"


@dataclass(eq=False)
class LabeledDataset:
    """m descriptor rows of equal length p with integer class labels.

    Every class in [0, n_classes) must have at least one sample; pass
    ``n_classes`` explicitly when the array is a subset of a larger
    dataset (e.g. a training split).
    """

    samples: np.ndarray
    labels: np.ndarray
    class_names: list[str] | None = None
    n_classes: int | None = None

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64)
        if samples.ndim != 2:
            raise InvalidInputError("samples must be a 2-D matrix")
        if samples.shape[0] != labels.shape[0]:
            raise InvalidInputError("labels length does not match sample count")
        if samples.shape[0] < 1 or samples.shape[1] < 1:
            raise InvalidInputError("dataset must be non-empty with p >= 1")
        if labels.min(initial=0) < 0:
            raise InvalidInputError("labels must be non-negative")
        c = self.n_classes if self.n_classes is not None else int(labels.max()) + 1
        present = np.unique(labels)
        if present.size != c or present[-1] != c - 1:
            missing = sorted(set(range(c)) - set(present.tolist()))
            raise InvalidInputError(f"classes with no samples: {missing}")
        if self.class_names is not None and len(self.class_names) != c:
            raise InvalidInputError("class_names length does not match class count")
        self.samples = samples
        self.labels = labels
        self.n_classes = c

    @property
    def n_samples(self) -> int:
        return int(self.samples.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.samples.shape[1])


@dataclass(eq=False)
class LdaModel:
    """Fitted discriminant: class means, shrunk-covariance Cholesky factor
    (lower triangular L with sigma = L L^T), log priors, and the shrinkage
    strength used."""

    class_means: np.ndarray
    covariance_cholesky: np.ndarray
    log_priors: np.ndarray
    shrinkage_lambda: float

    @property
    def n_classes(self) -> int:
        return int(self.class_means.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.class_means.shape[1])


@dataclass(frozen=True)
class SplitProtocol:
    """Either explicit train/test folds or repeated random stratified draws."""

    kind: str
    folds: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] | None = None
    train_per_class: int | None = None
    repeats: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.kind not in (FIXED_FOLDS, RANDOM_STRATIFIED):
            raise InvalidArgumentError(f"unknown protocol kind {self.kind!r}")
        if self.repeats < 1:
            raise InvalidArgumentError("repeats must be >= 1")
        if self.kind == FIXED_FOLDS:
            if self.folds is None or self.train_per_class is not None:
                raise InvalidArgumentError("fixed-folds requires folds and no train_per_class")
            if not self.folds:
                raise InvalidArgumentError("folds list must be non-empty")
        else:
            if self.train_per_class is None or self.folds is not None:
                raise InvalidArgumentError(
                    "random-stratified requires train_per_class and no folds"
                )
            if self.train_per_class < 1:
                raise InvalidArgumentError("train_per_class must be >= 1")

    @staticmethod
    def fixed(folds) -> "SplitProtocol":
        frozen = tuple((tuple(map(int, tr)), tuple(map(int, te))) for tr, te in folds)
        return SplitProtocol(kind=FIXED_FOLDS, folds=frozen)

    @staticmethod
    def random(train_per_class: int, repeats: int, seed: int = 0) -> "SplitProtocol":
        return SplitProtocol(
            kind=RANDOM_STRATIFIED,
            train_per_class=train_per_class,
            repeats=repeats,
            seed=seed,
        )


@dataclass(eq=False)
class EvalReport:
    """Per-split accuracies with mean/std and a summed confusion matrix
    (rows = true class, columns = predicted class)."""

    per_split_accuracy: list[float]
    mean_accuracy: float
    std_accuracy: float
    confusion: np.ndarray = field(repr=False)


def _resolve_shrinkage(lambda_mode) -> float:
    if lambda_mode == "auto":
        return DEFAULT_SHRINKAGE
    lam = float(lambda_mode)
    if lam < 0:
        raise InvalidArgumentError("shrinkage lambda must be non-negative")
    return lam


def lda_fit(train: LabeledDataset, lambda_mode="auto") -> LdaModel:
    """Fit the discriminant on a training set.

    Pooled covariance is the MLE (scatter / m); the shrunk covariance is
    sigma + lambda * (trace(sigma)/p) * I, falling back to unit scale when
    the pooled trace is zero (e.g. one sample per class) so the factor
    stays positive definite.  Priors are proportional to class counts.
    """
    if train.n_classes < 2:
        raise InvalidInputError("need at least 2 classes to fit a discriminant")
    if train.n_samples < 2:
        raise InvalidInputError("need at least 2 training samples")
    lam = _resolve_shrinkage(lambda_mode)
    x, y = train.samples, train.labels
    c, p = train.n_classes, train.n_features
    means = np.empty((c, p))
    scatter = np.zeros((p, p))
    counts = np.empty(c)
    for cls in range(c):
        rows = x[y == cls]
        counts[cls] = rows.shape[0]
        means[cls] = rows.mean(axis=0)
        centered = rows - means[cls]
        scatter += centered.T @ centered
    pooled = scatter / train.n_samples
    scale = pooled.trace() / p
    if scale == 0.0:
        scale = 1.0
    shrunk = pooled + lam * scale * np.eye(p)
    factor, _ = cho_factor(shrunk, lower=True)
    return LdaModel(
        class_means=means,
        covariance_cholesky=np.tril(factor),
        log_priors=np.log(counts / train.n_samples),
        shrinkage_lambda=lam,
    )


def discriminant_scores(model: LdaModel, x: np.ndarray) -> np.ndarray:
    """Linear discriminant scores for a batch of rows, shape (m, C)."""
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    if x.shape[1] != model.n_features:
        raise InvalidArgumentError(
            f"expected vectors of length {model.n_features}, got {x.shape[1]}"
        )
    factor = (model.covariance_cholesky, True)
    alpha = cho_solve(factor, model.class_means.T)  # (p, C)
    const = -0.5 * np.einsum("cp,pc->c", model.class_means, alpha) + model.log_priors
    return x @ alpha + const


def lda_predict(model: LdaModel, x) -> int:
    """Predicted class for one vector; ties break toward the lower index."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise InvalidArgumentError("lda_predict takes a single vector")
    scores = discriminant_scores(model, x)[0]
    return int(np.argmax(scores))  # argmax returns the first (lowest) maximizer


def _predict_matrix(model: LdaModel, x: np.ndarray) -> np.ndarray:
    return np.argmax(discriminant_scores(model, x), axis=1)


def make_splits(ds: LabeledDataset, proto: SplitProtocol) -> list[tuple[np.ndarray, np.ndarray]]:
    """Materialize (train indices, test indices) pairs for a protocol.

    Fixed folds pass through unchanged.  Random stratified splits draw
    exactly train_per_class per class without replacement, the remainder
    being the test side; the sequence is reproducible from the seed.
    """
    if proto.kind == FIXED_FOLDS:
        out = []
        for tr, te in proto.folds:
            tr = np.asarray(tr, dtype=np.int64)
            te = np.asarray(te, dtype=np.int64)
            if tr.size and (tr.min() < 0 or tr.max() >= ds.n_samples):
                raise InvalidArgumentError("fold train indices out of range")
            if te.size and (te.min() < 0 or te.max() >= ds.n_samples):
                raise InvalidArgumentError("fold test indices out of range")
            out.append((tr, te))
        return out

    class_indices = [np.nonzero(ds.labels == cls)[0] for cls in range(ds.n_classes)]
    smallest = min(idx.size for idx in class_indices)
    if proto.train_per_class >= smallest:
        raise InvalidArgumentError(
            f"train_per_class={proto.train_per_class} must be smaller than the"
            f" smallest class size ({smallest})"
        )
    rng = np.random.default_rng(proto.seed)
    splits = []
    for _ in range(proto.repeats):
        train_parts = [
            rng.choice(idx, size=proto.train_per_class, replace=False)
            for idx in class_indices
        ]
        train = np.sort(np.concatenate(train_parts))
        mask = np.ones(ds.n_samples, dtype=bool)
        mask[train] = False
        splits.append((train, np.nonzero(mask)[0]))
    return splits


def _evaluate_split(ds, train_idx, test_idx, lambda_mode):
    train = LabeledDataset(
        ds.samples[train_idx], ds.labels[train_idx], n_classes=ds.n_classes
    )
    model = lda_fit(train, lambda_mode)
    predicted = _predict_matrix(model, ds.samples[test_idx])
    truth = ds.labels[test_idx]
    accuracy = float(np.mean(predicted == truth))
    confusion = np.zeros((ds.n_classes, ds.n_classes), dtype=np.int64)
    np.add.at(confusion, (truth, predicted), 1)
    return accuracy, confusion


def evaluate(
    ds: LabeledDataset,
    proto: SplitProtocol,
    lambda_mode="auto",
    workers: int = 1,
) -> EvalReport:
    """Fit/predict over every split and aggregate.

    std is the population standard deviation of the per-split accuracies;
    the confusion matrix sums over all splits.  Splits are independent, so
    ``workers`` > 1 evaluates them in a thread pool (results are gathered
    in split order, keeping the report deterministic).
    """
    splits = make_splits(ds, proto)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(lambda s: _evaluate_split(ds, s[0], s[1], lambda_mode), splits)
            )
    else:
        results = [_evaluate_split(ds, tr, te, lambda_mode) for tr, te in splits]
    accuracies = [acc for acc, _ in results]
    confusion = np.zeros((ds.n_classes, ds.n_classes), dtype=np.int64)
    for _, conf in results:
        confusion += conf
    return EvalReport(
        per_split_accuracy=accuracies,
        mean_accuracy=float(np.mean(accuracies)),
        std_accuracy=float(np.std(accuracies)),
        confusion=confusion,
    )
