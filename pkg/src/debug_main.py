import logging

from src.application.GroupReportManager import GroupReportManager
from src.application.ResultsStore import ReportTable

if __name__ == "__main__":
    logger_config = logging.basicConfig(level=logging.INFO)
    report_manager = GroupReportManager()
    report_manager.save_report(ReportTable.ORDERS, report_manager.order_table())
    report_manager.save_report(ReportTable.RELATIONS, report_manager.relation_table(k=4))
    report_manager.save_report(ReportTable.CERTIFICATES, report_manager.certificate_table())
