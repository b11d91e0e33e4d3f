import json
from dataclasses import dataclass, field
from typing import List, Optional, Dict, Any

# Статусы проверок
STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_INCONCLUSIVE = "inconclusive"

# Вердикты анализа деформаций
VERDICT_RIGID = "rigid"
VERDICT_FLEXIBLE = "flexible"
VERDICT_INCONCLUSIVE = "inconclusive"


# --- Отчеты модулей ---

@dataclass
class ReportItem:
    name: str
    ok: bool
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "ok": self.ok, "details": self.details}


@dataclass
class Report:
    """Отчет проверки: список пунктов и произвольные вычисленные данные.

    Нарушения аксиом и провалы оракулов записываются сюда, а не
    выбрасываются как исключения.
    """
    title: str
    items: List[ReportItem] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)

    def add(self, name: str, ok: bool, **details) -> bool:
        self.items.append(ReportItem(name, bool(ok), details))
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(item.ok for item in self.items)

    def item(self, name: str) -> Optional[ReportItem]:
        for it in self.items:
            if it.name == name:
                return it
        return None

    def failures(self) -> List[ReportItem]:
        return [it for it in self.items if not it.ok]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "title": self.title,
            "ok": self.ok,
            "items": [it.to_dict() for it in self.items],
            "data": self.data,
        }


@dataclass
class ValidationReport(Report):
    # Первая нарушенная тройка (метки) и ненулевой якобиатор
    violating_triple: Optional[List[str]] = None
    jacobiator: Optional[Dict[str, str]] = None

    def to_dict(self) -> Dict[str, Any]:
        d = super().to_dict()
        d["violating_triple"] = self.violating_triple
        d["jacobiator"] = self.jacobiator
        return d


@dataclass
class ModelReport(Report):
    k: Optional[int] = None # порядок невырожденности модели, если условия выполнены

    def to_dict(self) -> Dict[str, Any]:
        d = super().to_dict()
        d["k"] = self.k
        return d


@dataclass
class MorphismReport(Report):
    failing_pair: Optional[List[str]] = None # первая пара базисных векторов, на которой φ не сохраняет скобку
    image_cap_q_dim: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        d = super().to_dict()
        d["failing_pair"] = self.failing_pair
        d["image_cap_q_dim"] = self.image_cap_q_dim
        return d


@dataclass
class JacobiEquation:
    triple: List[str]
    value: Dict[str, str] # базисная метка -> многочлен от параметров

    def to_dict(self) -> Dict[str, Any]:
        return {"triple": list(self.triple), "value": dict(self.value)}


@dataclass
class RigidityCertificate:
    parameters: List[str]
    equations: List[JacobiEquation] = field(default_factory=list)
    verdict: str = VERDICT_INCONCLUSIVE
    eliminations: List[Dict[str, str]] = field(default_factory=list) # шаги исключения: переменная -> выражение
    residue: List[str] = field(default_factory=list) # нелинейный остаток, если исключение застряло
    witness: Optional[Dict[str, str]] = None # однопараметрическое семейство для вердикта flexible

    @property
    def rigid(self) -> bool:
        return self.verdict == VERDICT_RIGID

    def equation(self, *triple: str) -> Optional[JacobiEquation]:
        for eq in self.equations:
            if tuple(eq.triple) == triple:
                return eq
        return None

    def to_dict(self) -> Dict[str, Any]:
        d = {
            "parameters": list(self.parameters),
            "equations": [eq.to_dict() for eq in self.equations],
            "verdict": self.verdict,
            "eliminations": list(self.eliminations),
        }
        if self.residue:
            d["residue"] = list(self.residue)
        if self.witness is not None:
            d["witness"] = dict(self.witness)
        return d


@dataclass
class ClosureReport(Report):
    unknowns: List[str] = field(default_factory=list)
    equations: List[str] = field(default_factory=list)
    branches: List[Dict[str, Any]] = field(default_factory=list) # ветви решения после исключения
    stated_solutions: List[Dict[str, str]] = field(default_factory=list) # параметризации заявленного семейства решений

    def to_dict(self) -> Dict[str, Any]:
        d = super().to_dict()
        d.update({
            "unknowns": list(self.unknowns),
            "equations": list(self.equations),
            "branches": list(self.branches),
            "stated_solutions": [dict(s) for s in self.stated_solutions],
        })
        return d


@dataclass
class SampleReport(Report):
    samples: List[Dict[str, str]] = field(default_factory=list) # точки выборки в формате скаляров
    witness: Optional[Dict[str, str]] = None # точка, в которой тождество нарушено

    @property
    def verdict(self) -> str:
        if self.ok:
            return f"verified at {len(self.samples)} samples"
        return "fail"

    def to_dict(self) -> Dict[str, Any]:
        d = super().to_dict()
        d["samples"] = list(self.samples)
        d["witness"] = self.witness
        d["verdict"] = self.verdict
        return d


# --- Отчеты CLI ---

@dataclass
class Check:
    id: str
    anchor: str # место в тексте, на которое опирается проверка
    status: str = STATUS_PASS
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"id": self.id, "anchor": self.anchor, "status": self.status, "details": self.details}


@dataclass
class SuiteReport:
    suite: str
    seed: int
    checks: List[Check] = field(default_factory=list)
    elapsed: Optional[float] = None # секунды, в JSON только по запросу

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def sorted_checks(self) -> List[Check]:
        return sorted(self.checks, key=lambda c: c.id)

    @property
    def passed(self) -> bool:
        return all(c.status == STATUS_PASS for c in self.checks)

    def counts(self) -> Dict[str, int]:
        result = {STATUS_PASS: 0, STATUS_FAIL: 0, STATUS_INCONCLUSIVE: 0}
        for c in self.checks:
            result[c.status] = result.get(c.status, 0) + 1
        return result

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        d = {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "counts": self.counts(),
            "checks": [c.to_dict() for c in self.sorted_checks()],
        }
        if include_timing and self.elapsed is not None:
            d["elapsed"] = round(self.elapsed, 3)
        return d

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), ensure_ascii=False, sort_keys=True, indent=2)
