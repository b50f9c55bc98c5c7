from .BasicSeqReport import BasicSeqReport
from .BasicSeqRequest import BasicSeqRequest
from .BasicSequenceOut import BasicSequenceOut
from .ClassifyRequest import ClassifyRequest
from .ExpandRequest import ExpandRequest
from .ExpansionOut import ExpansionOut
from .IntegrateOut import IntegrateOut
from .NamedOpOut import NamedOpOut
from .PoissonOut import PoissonOut
from .PsiSequenceOut import PsiSequenceOut
from .PsiSeriesOut import PsiSeriesOut
from .RecognitionOut import RecognitionOut
from .RunConfig import RunConfig
from .SuiteResult import SuiteResult
from .TableOut import TableOut
from .TranslateOut import TranslateOut
from .VerifyReport import VerifyReport
from .VerifyRequest import VerifyRequest
