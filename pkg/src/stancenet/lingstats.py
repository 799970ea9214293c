"""Group comparison of lexical-category usage: tweet-level and user-level z-tests."""

from __future__ import annotations

import logging
import math
import sys
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Iterable, Mapping, Sequence

from .ingest import TweetRecord
from .lexicon import LexicalCategory, LexiconMatcher

log = logging.getLogger(__name__)

P_FLOOR = sys.float_info.min


@dataclass(frozen=True)
class StatsConfig:
    alpha: float = 0.05
    min_user_tweets: int = 1

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.min_user_tweets < 0:
            raise ValueError("min_user_tweets must be non-negative")


@dataclass(frozen=True)
class CategoryStats:
    category_id: str
    display_name: str
    n_pro: int
    n_anti: int
    t1_pro: float
    t1_anti: float
    z1: float | None
    p1: float | None
    t2_pro: float | None = None
    t2_anti: float | None = None
    z2: float | None = None
    p2: float | None = None
    users_pro: int = 0
    users_anti: int = 0
    significant_1: bool = False
    significant_2: bool = False

    def as_dict(self) -> dict:
        return asdict(self)


def normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def p_value(z: float) -> float:
    """Two-sided p-value, floored at the smallest positive normal double."""
    p = math.erfc(abs(z) / math.sqrt(2.0))
    return min(1.0, max(p, P_FLOOR))


def format_p(p: float | None) -> str:
    if p is None:
        return "-"
    if p < 0.001:
        return "<.001"
    return f"{p:.3f}".lstrip("0") if p < 1 else "1.000"


def t1(group_matches: Sequence[frozenset[str]], category: str) -> float:
    if not group_matches:
        raise ValueError("T1 is undefined for an empty group")
    return sum(1 for m in group_matches if category in m) / len(group_matches)


def t2(per_user: Mapping[str, Sequence[frozenset[str]]], category: str,
       min_user_tweets: int = 1) -> tuple[float, float | None, int]:
    """Mean and sample SD of per-user match proportions, plus the user count."""
    props = []
    for user, matches in per_user.items():
        if len(matches) == 0 or len(matches) < min_user_tweets:
            log.warning("user %s has %d tweets; excluded from T2", user, len(matches))
            continue
        props.append(sum(1 for m in matches if category in m) / len(matches))
    return _mean_sd(props)


def z_prop(p1: float, n1: int, p2: float, n2: int) -> float:
    """Pooled two-sample z statistic for a difference of proportions."""
    if n1 <= 0 or n2 <= 0:
        raise ValueError("group sizes must be positive")
    pooled = (p1 * n1 + p2 * n2) / (n1 + n2)
    var = pooled * (1 - pooled) * (1 / n1 + 1 / n2)
    if pooled <= 0 or pooled >= 1 or var <= 0:
        raise ValueError(f"degenerate pooled proportion {pooled}")
    return (p1 - p2) / math.sqrt(var)


def z_means(m1: float, s1: float, n1: int, m2: float, s2: float, n2: int) -> float:
    """Unpooled z statistic for a difference of means."""
    if n1 < 2 or n2 < 2:
        raise ValueError("each group needs at least two observations")
    var = s1 * s1 / n1 + s2 * s2 / n2
    if var <= 0:
        raise ValueError("zero combined variance")
    return (m1 - m2) / math.sqrt(var)


def _by_user(tweets: Sequence[TweetRecord], matches: Sequence[frozenset[str]]):
    out: dict[str, list[frozenset[str]]] = {}
    for t, m in zip(tweets, matches):
        out.setdefault(t.user_id, []).append(m)
    return out


class _GroupCounts:
    """Per-category hit counts for one group, computed once for all categories."""

    def __init__(self, per_user: Mapping[str, Sequence[frozenset[str]]], min_user_tweets: int):
        self.n_tweets = 0
        self.hits: Counter[str] = Counter()
        self.users: list[tuple[int, Counter[str]]] = []
        for user, matches in per_user.items():
            c = Counter(cid for m in matches for cid in m)
            self.n_tweets += len(matches)
            self.hits.update(c)
            if len(matches) == 0 or len(matches) < min_user_tweets:
                log.warning("user %s has %d tweets; excluded from T2", user, len(matches))
                continue
            self.users.append((len(matches), c))

    def t1(self, category: str) -> float:
        return self.hits[category] / self.n_tweets

    def t2(self, category: str) -> tuple[float, float | None, int]:
        props = [c[category] / n for n, c in self.users]
        return _mean_sd(props)


def _mean_sd(props: Sequence[float]) -> tuple[float, float | None, int]:
    n = len(props)
    if n == 0:
        raise ValueError("T2 is undefined with no eligible users")
    mean = math.fsum(props) / n
    if n < 2:
        return mean, None, n
    var = math.fsum((p - mean) ** 2 for p in props) / (n - 1)
    return mean, math.sqrt(var), n


def analyze(pro: Sequence[TweetRecord], anti: Sequence[TweetRecord],
            categories: Iterable[LexicalCategory],
            config: StatsConfig = StatsConfig()) -> list[CategoryStats]:
    """One row per category comparing the pro group against the anti group.

    Rows whose test is undefined (nothing matched anywhere, or no spread in
    user proportions) carry ``None`` for that test instead of raising.
    """
    if not pro or not anti:
        raise ValueError("both groups need at least one tweet")
    categories = list(categories)
    matcher = LexiconMatcher(categories)
    groups = []
    for tweets in (pro, anti):
        matches = [matcher.match(t.text) for t in tweets]
        groups.append(_GroupCounts(_by_user(tweets, matches), config.min_user_tweets))
    gp, ga = groups

    rows = []
    for cat in categories:
        a, b = gp.t1(cat.id), ga.t1(cat.id)
        try:
            z1 = z_prop(a, gp.n_tweets, b, ga.n_tweets)
            p1 = p_value(z1)
        except ValueError:
            z1 = p1 = None
        t2a = t2b = z2 = p2 = None
        ua = ub = 0
        if not cat.t1_only:
            t2a, sa, ua = gp.t2(cat.id)
            t2b, sb, ub = ga.t2(cat.id)
            if sa is not None and sb is not None:
                try:
                    z2 = z_means(t2a, sa, ua, t2b, sb, ub)
                    p2 = p_value(z2)
                except ValueError:
                    pass
        rows.append(CategoryStats(
            category_id=cat.id, display_name=cat.display_name,
            n_pro=gp.n_tweets, n_anti=ga.n_tweets,
            t1_pro=a, t1_anti=b, z1=z1, p1=p1,
            t2_pro=t2a, t2_anti=t2b, z2=z2, p2=p2,
            users_pro=ua, users_anti=ub,
            significant_1=p1 is not None and p1 < config.alpha,
            significant_2=p2 is not None and p2 < config.alpha,
        ))
    return rows
