from typing import Any, Dict, List, Union

SectionType = Dict[str, str]
RawConfigType = Dict[str, SectionType]
ErrorDictType = Dict[str, List[str]]

CellType = Union[int, float, complex, str]
RowType = Dict[str, CellType]
ColumnsType = Dict[str, List[CellType]]
FooterType = Dict[str, str]

SummaryType = Dict[str, Any]
CriterionResultType = Dict[str, Union[str, bool, float]]
