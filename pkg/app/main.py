import uvicorn
from dotenv import load_dotenv

from app.helpers.config import get_settings

# Load environment variables before Settings reads them
load_dotenv()

if __name__ == "__main__":

    settings = get_settings()
    uvicorn.run(
        "app.api:app",
        host=settings.API_HOST,
        port=settings.API_PORT,
        reload=settings.API_RELOAD,
        log_level=settings.LOG_LEVEL.lower(),
    )
