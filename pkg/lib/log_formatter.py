from colorama import Fore
import logging


class LogFormatter(logging.Formatter):
    """
    One line per record, "level: [module] message". Continuation lines of
    multi-line messages and tracebacks are indented under the prefix.
    """
    COLORS = {
        logging.CRITICAL: Fore.LIGHTRED_EX,
        logging.ERROR: Fore.LIGHTRED_EX,
        logging.WARNING: Fore.LIGHTYELLOW_EX,
        logging.INFO: Fore.LIGHTBLUE_EX,
    }

    def __init__(self, colors: bool = True):
        super().__init__()
        self._colors = colors

    def format(self, record: logging.LogRecord) -> str:
        module = record.name.rsplit(".", 1)[-1]
        text = record.getMessage()
        if record.exc_info:
            text = f"{text}\n{self.formatException(record.exc_info)}"
        text = f"{record.levelname.lower()}: [{module}] {text}".replace("\n", "\n    ")

        color = self.COLORS.get(record.levelno)
        if self._colors and color:
            return f"{color}{text}{Fore.RESET}"
        return text
