"""Nonnegative elastic-net sparse coding by projected gradient descent.

Solves ``min_{H >= 0} ||X - W H||_F^2 + lam * sum(H) + (kappa2 / 2) * ||H||_F^2``.
On the nonnegative orthant the l1 term is linear, so each iteration is a plain
gradient step followed by clamping at zero. With step ``1/L`` for a Lipschitz
constant ``L`` of the gradient the objective never increases.
"""

from __future__ import annotations

import logging

import numpy as np

from ondl_common.errors import DataError, NumericalError
from ondl_common.models import StepRule

logger = logging.getLogger(__name__)


def _check_inputs(X: np.ndarray, W: np.ndarray) -> None:
    if X.ndim != 2 or W.ndim != 2:  # noqa: PLR2004
        msg = f"expected 2-D X and W, got shapes {X.shape} and {W.shape}"
        raise DataError(msg)
    if X.shape[0] != W.shape[0]:
        msg = f"X has {X.shape[0]} rows but W has {W.shape[0]}"
        raise DataError(msg)
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(W))):
        msg = "sparse coding input has non-finite entries"
        raise DataError(msg)


def lipschitz_constant(gram: np.ndarray, kappa2: float, rule: StepRule) -> float:
    """Lipschitz constant of the smooth part's gradient for Gram matrix ``W^T W``."""
    if rule is StepRule.TRACE:
        return 2.0 * float(np.trace(gram)) + kappa2
    return 2.0 * float(np.linalg.norm(gram, 2)) + kappa2


def coding_loss(
    X: np.ndarray, W: np.ndarray, H: np.ndarray, lam: float = 0.0, kappa2: float = 0.0
) -> float:
    """Value of the elastic-net coding objective at ``H``."""
    residual = X - W @ H
    return float(
        np.sum(residual * residual) + lam * np.sum(H) + 0.5 * kappa2 * np.sum(H * H)
    )


def column_losses(
    X: np.ndarray, W: np.ndarray, H: np.ndarray, lam: float = 0.0, kappa2: float = 0.0
) -> np.ndarray:
    """Per-column contributions to :func:`coding_loss`."""
    residual = X - W @ H
    return (
        np.sum(residual * residual, axis=0)
        + lam * np.sum(H, axis=0)
        + 0.5 * kappa2 * np.sum(H * H, axis=0)
    )


def kkt_residual(
    X: np.ndarray, W: np.ndarray, H: np.ndarray, lam: float = 0.0, kappa2: float = 0.0
) -> float:
    """Frobenius norm of the projected gradient of the coding objective at ``H``."""
    grad = 2.0 * (W.T @ (W @ H - X)) + kappa2 * H + lam
    projected = np.where(H > 0.0, grad, np.minimum(grad, 0.0))
    return float(np.linalg.norm(projected))


def sparse_code(  # noqa: PLR0913
    X: np.ndarray,
    W: np.ndarray,
    lam: float = 0.0,
    kappa2: float = 0.0,
    *,
    tol: float = 1e-6,
    max_iter: int = 200,
    step_rule: StepRule = StepRule.SPECTRAL,
    H0: np.ndarray | None = None,
    per_column: bool = False,
) -> np.ndarray:
    """Return a nonnegative code ``H`` (r x n) for ``X`` (d x n) against ``W`` (d x r).

    Iterates until the Frobenius change between successive iterates drops below
    ``tol`` or ``max_iter`` steps are taken. Starts from zeros unless ``H0`` is
    given.

    With ``per_column`` each column stops on its own Euclidean change instead,
    so a column's code does not depend on which other columns share the batch.

    Raises:
        NumericalError: if ``W`` is identically zero.
        DataError: on non-finite input or mismatched dimensions.

    """
    X = np.asarray(X, dtype=float)
    W = np.asarray(W, dtype=float)
    _check_inputs(X, W)
    gram = W.T @ W
    if float(np.trace(gram)) == 0.0:
        msg = "zero dictionary"
        raise NumericalError(msg)
    L = lipschitz_constant(gram, kappa2, step_rule)
    cross = W.T @ X
    r, n = W.shape[1], X.shape[1]
    H = np.zeros((r, n)) if H0 is None else np.maximum(np.asarray(H0, dtype=float), 0.0)
    active = np.arange(n)
    iterations = 0
    for iterations in range(1, max_iter + 1):  # noqa: B007
        H_active = H[:, active]
        grad = 2.0 * (gram @ H_active - cross[:, active]) + kappa2 * H_active + lam
        H_next = np.maximum(H_active - grad / L, 0.0)
        change = H_next - H_active
        H[:, active] = H_next
        if per_column:
            active = active[np.linalg.norm(change, axis=0) >= tol]
            if active.size == 0:
                break
        elif float(np.linalg.norm(change)) < tol:
            break
    logger.debug(
        "Sparse coding done: r=%d n=%d iterations=%d step_rule=%s per_column=%s",
        r,
        n,
        iterations,
        step_rule,
        per_column,
    )
    return H
